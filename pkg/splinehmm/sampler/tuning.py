from __future__ import print_function, division
import copy

import numpy as np

from ..consts import ADAPT_EXPONENT, ADAPT_SCALE_LIMITS
from ..exceptions import ConfigError

# Proposal scale attribute used by each within-dimension move.
SCALE_FOR_MOVE = {
    'knot': 'tau1',
    'coeffs': 'tau2',
    'zeta': 'tau3',
    'delta': 'tau4',
    'gamma': 'tau5',
    'weights': 'tau_w',
}

# Scalar moves target the higher one-dimensional acceptance rate.
SCALAR_MOVES = ('zeta',)

COEFF_BLOCKS = ('joint', 'state')

# Knot proposal scale per unit of support width when tau1 is not given.
_TAU1_PER_WIDTH = 0.07 / 4.5


class TuningParams(object):
    """Proposal scales of the Metropolis-Hastings moves.

    Attributes
    ----------
    tau1 : float or None
        Standard deviation of the knot move.  None means
        ``0.07 / 4.5`` times the width of the support.
    tau2 : float
        Standard deviation of the coefficient random walk.
    tau3, tau4, tau5 : float
        Log-scale standard deviations for zeta, delta~ and Gamma~.
    tau_w : float
        Logit-scale standard deviation for the zero weights.
    alpha : float
        Exponent of the birth proposal spread.
    adapt : bool
        Adapt tau1..tau5 and tau_w during burn-in.
    target_accept, target_accept_scalar : float
    coeff_block : {'joint', 'state'}
        Update all coefficients in one block, or one state at a time.

    Zero scales are allowed and give moves that never leave the current
    state.
    """

    def __init__(self, tau1=None, tau2=0.1, tau3=0.5, tau4=1.6, tau5=0.14,
                 tau_w=0.5, alpha=1.8, adapt=True, target_accept=0.25,
                 target_accept_scalar=0.44, coeff_block='joint'):
        self.tau1 = None if tau1 is None else float(tau1)
        self.tau2 = float(tau2)
        self.tau3 = float(tau3)
        self.tau4 = float(tau4)
        self.tau5 = float(tau5)
        self.tau_w = float(tau_w)
        self.alpha = float(alpha)
        self.adapt = bool(adapt)
        self.target_accept = float(target_accept)
        self.target_accept_scalar = float(target_accept_scalar)
        self.coeff_block = coeff_block
        self.check()

    def check(self):
        for key in ('tau1', 'tau2', 'tau3', 'tau4', 'tau5', 'tau_w'):
            value = getattr(self, key)
            if value is not None and not value >= 0:
                raise ConfigError(key, "{} must be non-negative, got {}"
                                  .format(key, value))
        if not self.alpha > 0:
            raise ConfigError('alpha', "alpha must be positive")
        for key in ('target_accept', 'target_accept_scalar'):
            if not 0 < getattr(self, key) < 1:
                raise ConfigError(key, "{} must lie in (0, 1)".format(key))
        if self.coeff_block not in COEFF_BLOCKS:
            raise ConfigError('coeff_block', "coeff_block must be one of {}"
                              .format(COEFF_BLOCKS))

    def copy(self):
        return copy.deepcopy(self)

    def resolved(self, width):
        """Copy with `tau1` filled in for a support of the given width."""
        tuning = self.copy()
        if tuning.tau1 is None:
            tuning.tau1 = _TAU1_PER_WIDTH * width
        return tuning

    def scale(self, move):
        return getattr(self, SCALE_FOR_MOVE[move])

    def target(self, move):
        if move in SCALAR_MOVES:
            return self.target_accept_scalar
        return self.target_accept

    def to_dict(self):
        return dict(self.__dict__)


class Schedule(object):
    """Burn-in length, number of post-burn-in sweeps and thinning."""

    def __init__(self, burn_in=50000, iters=50000, thin=10):
        self.burn_in = int(burn_in)
        self.iters = int(iters)
        self.thin = int(thin)
        if self.burn_in < 0:
            raise ConfigError('burn_in', "burn_in must be non-negative")
        if self.iters < 0:
            raise ConfigError('iters', "iters must be non-negative")
        if self.thin < 1:
            raise ConfigError('thin', "thin must be at least 1")

    @property
    def n_draws(self):
        """Number of draws in a trace: the post-burn-in state plus every
        `thin`-th sweep after it."""
        return 1 + self.iters // self.thin

    def to_dict(self):
        return dict(burn_in=self.burn_in, iters=self.iters, thin=self.thin)

    def __repr__(self):
        return "Schedule(burn_in={}, iters={}, thin={})".format(
            self.burn_in, self.iters, self.thin)


class ScaleAdapter(object):
    """Robbins-Monro adaptation of log proposal scales.

    After each move, log(tau) moves by (sweep+1)^-0.6 times the difference
    between the observed and the target acceptance rate.  Only used during
    burn-in.
    """

    def __init__(self, tuning, width=1.0):
        self.tuning = tuning
        self.limits = scale_limits(width)

    def update(self, move, acceptance, sweep):
        attr = SCALE_FOR_MOVE.get(move)
        if attr is None:
            return
        tau = getattr(self.tuning, attr)
        if not tau > 0:
            return
        step = (sweep + 1.0) ** -ADAPT_EXPONENT
        lo, hi = self.limits[attr]
        tau = tau * np.exp(step * (acceptance - self.tuning.target(move)))
        setattr(self.tuning, attr, float(np.clip(tau, lo, hi)))


def scale_limits(width):
    """Range each adapted scale is clipped to.

    The knot scale is measured in units of the support `width` and may not
    exceed it: a wider truncated normal is already flat over any window.
    """
    limits = dict(ADAPT_SCALE_LIMITS)
    lo, hi = limits['tau1']
    limits['tau1'] = (lo * width, hi * width)
    return limits
