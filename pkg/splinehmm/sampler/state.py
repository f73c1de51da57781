from __future__ import print_function, division
from collections import OrderedDict

import numpy as np

from ..consts import CACHE_TOLERANCE
from ..hmm.engine import (observed_design, emission_probs,
                          log_likelihood_from_probs)
from ..prior import log_prior
from ..exceptions import NumericError

MOVES = ('knot', 'coeffs', 'zeta', 'delta', 'gamma', 'weights', 'birth',
         'death')


class MoveCounter(object):
    """Proposed and accepted tallies for one move type."""

    def __init__(self, proposed=0, accepted=0):
        self.proposed = proposed
        self.accepted = accepted

    @property
    def rejected(self):
        return self.proposed - self.accepted

    @property
    def rate(self):
        if self.proposed == 0:
            return np.nan
        return self.accepted / self.proposed

    def __repr__(self):
        return "MoveCounter(proposed={}, accepted={})".format(
            self.proposed, self.accepted)


class McmcState(object):
    """Current parameters of one chain plus cached quantities.

    Attributes
    ----------
    params : HmmParams
    data : Dataset
    prior_cfg : PriorConfig
    rng : np.random.Generator
    log_likelihood, log_prior : float
    design : sparse basis matrix at the observed points, or None
    probs : (n, N) emission matrix
    counters : OrderedDict of MoveCounter, keyed by move name
    """

    def __init__(self, params, data, prior_cfg, rng):
        self.params = params
        self.data = data
        self.prior_cfg = prior_cfg
        self.rng = rng
        self.counters = OrderedDict((move, MoveCounter()) for move in MOVES)
        self.refresh()

    @property
    def N(self):
        return self.params.N

    @property
    def K(self):
        return self.params.K

    def refresh(self):
        """Recomputes every cached quantity from `params`."""
        self.design = observed_design(self.params.knots, self.data)
        self.probs = emission_probs(self.params, self.data, self.design)
        self.log_likelihood = log_likelihood_from_probs(self.params,
                                                        self.probs)
        self.log_prior = log_prior(self.params, self.prior_cfg)

    def accept(self, params, log_likelihood, log_prior, design, probs):
        self.params = params
        self.log_likelihood = log_likelihood
        self.log_prior = log_prior
        self.design = design
        self.probs = probs

    def check_caches(self, tol=CACHE_TOLERANCE, sweep=None):
        """Compares the cached log densities with a fresh recomputation.

        Raises
        ------
        NumericError if either has drifted by more than `tol` (relative).
        """
        probs = emission_probs(self.params, self.data)
        fresh_ll = log_likelihood_from_probs(self.params, probs)
        fresh_lp = log_prior(self.params, self.prior_cfg)
        for name, cached, fresh in (('log-likelihood', self.log_likelihood,
                                     fresh_ll),
                                    ('log-prior', self.log_prior, fresh_lp)):
            if abs(cached - fresh) > tol * max(1.0, abs(fresh)):
                raise NumericError(
                    "cached {} {!r} drifted from recomputed {!r}".format(
                        name, cached, fresh), sweep=sweep)
