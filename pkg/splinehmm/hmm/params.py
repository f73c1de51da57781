from __future__ import print_function, division
from collections import namedtuple

import numpy as np

from ..splines import KnotConfig, SplineCoeffs, build_knot_config
from ..utils import normalise_rows
from ..exceptions import InvalidParamsError


class HmmParams(namedtuple('HmmParams', [
        'knots', 'coeffs', 'delta_uncon', 'gamma_uncon', 'zeta',
        'zero_weights'])):
    """Full parameter state of a spline-emission HMM.

    Instances are immutable; use `_replace` to derive a modified copy.

    Attributes
    ----------
    knots : KnotConfig
    coeffs : SplineCoeffs, shape (N, K+4)
    delta_uncon : (N,) array of positive floats
    gamma_uncon : (N, N) array of positive floats
    zeta : float
        Shape of the log-gamma prior on the coefficients.
    zero_weights : (N,) array in [0, 1], or None
        Probability of an exact zero in each state.
    """
    __slots__ = ()

    def __new__(cls, knots, coeffs, delta_uncon, gamma_uncon, zeta=1.0,
                zero_weights=None):
        if not isinstance(coeffs, SplineCoeffs):
            coeffs = SplineCoeffs(coeffs)
        delta_uncon = np.array(delta_uncon, dtype=float).ravel()
        gamma_uncon = np.array(gamma_uncon, dtype=float, ndmin=2)
        if zero_weights is not None:
            zero_weights = np.array(zero_weights, dtype=float).ravel()
        return super(HmmParams, cls).__new__(
            cls, knots, coeffs, delta_uncon, gamma_uncon, float(zeta),
            zero_weights)

    @property
    def N(self):
        return len(self.delta_uncon)

    @property
    def K(self):
        return self.knots.K

    @property
    def coeffs_uncon(self):
        return self.coeffs.uncon

    @property
    def simplex(self):
        return self.coeffs.simplex

    @property
    def delta(self):
        return self.delta_uncon / self.delta_uncon.sum()

    @property
    def gamma(self):
        return normalise_rows(self.gamma_uncon)

    @property
    def zero_inflated(self):
        return self.zero_weights is not None

    def validate(self):
        """Checks shapes and the positivity constraints.

        Raises
        ------
        InvalidParamsError
        """
        N = self.N
        if not isinstance(self.knots, KnotConfig):
            raise InvalidParamsError("knots must be a KnotConfig")
        if self.coeffs.uncon.shape != (N, self.knots.n_basis):
            raise InvalidParamsError(
                "coefficients have shape {}, expected {}".format(
                    self.coeffs.uncon.shape, (N, self.knots.n_basis)))
        if not np.all(np.isfinite(self.coeffs.uncon)):
            raise InvalidParamsError("coefficients must be finite")
        if self.gamma_uncon.shape != (N, N):
            raise InvalidParamsError(
                "transition matrix has shape {}, expected {}".format(
                    self.gamma_uncon.shape, (N, N)))
        if np.any(self.delta_uncon <= 0) or np.any(self.gamma_uncon <= 0):
            raise InvalidParamsError(
                "unconstrained initial and transition weights must be"
                " positive")
        if not self.zeta > 0:
            raise InvalidParamsError("zeta must be positive")
        if self.zero_weights is not None:
            w = self.zero_weights
            if w.shape != (N,) or np.any(w < 0) or np.any(w > 1):
                raise InvalidParamsError(
                    "zero weights must be {} values in [0, 1]".format(N))
            if np.sum(w == 1) > 1:
                raise InvalidParamsError(
                    "at most one state may emit zeros with probability one")
        return self

    def permute(self, perm):
        """Relabels the states: new state i is old state perm[i]."""
        perm = np.asarray(perm, dtype=int)
        w = self.zero_weights
        return self._replace(
            coeffs=SplineCoeffs(self.coeffs.uncon[perm]),
            delta_uncon=self.delta_uncon[perm],
            gamma_uncon=self.gamma_uncon[np.ix_(perm, perm)],
            zero_weights=None if w is None else w[perm])

    def to_dict(self):
        """Plain-Python description, both constrained and unconstrained."""
        d = {
            'N': self.N,
            'K': self.K,
            'a': self.knots.a,
            'b': self.knots.b,
            'knots': self.knots.interior.tolist(),
            'coeffs': self.simplex.tolist(),
            'coeffs_uncon': self.coeffs.uncon.tolist(),
            'delta': self.delta.tolist(),
            'delta_uncon': self.delta_uncon.tolist(),
            'gamma': self.gamma.tolist(),
            'gamma_uncon': self.gamma_uncon.tolist(),
            'zeta': self.zeta,
            'w': None if self.zero_weights is None
            else self.zero_weights.tolist()}
        return d

    @classmethod
    def from_dict(cls, d):
        knots = build_knot_config(d['a'], d['b'], d['knots'])
        if d.get('coeffs_uncon') is not None:
            coeffs = SplineCoeffs(d['coeffs_uncon'])
        else:
            coeffs = SplineCoeffs.from_simplex(d['coeffs'])
        delta = d.get('delta_uncon', d.get('delta'))
        gamma = d.get('gamma_uncon', d.get('gamma'))
        return cls(knots, coeffs, delta, gamma, d.get('zeta', 1.0),
                   d.get('w'))
