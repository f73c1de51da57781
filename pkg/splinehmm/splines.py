'''Normalised cubic B-spline bases on a bounded support.

Each basis function is rescaled so that it integrates to one over
[a, b], which turns any simplex-weighted combination of the basis into a
proper density.

Notation
--------

:math:`a, b` - boundary knots.

:math:`r_1 < \\dots < r_K` - interior knots.

:math:`t` - augmented knot sequence, ``a`` and ``b`` each repeated four
times around the interior knots.  Basis ``k`` (0-based) is supported on
:math:`(t_k, t_{k+4})` and is scaled by :math:`4 / (t_{k+4} - t_k)`.

Functions
---------

'''

from __future__ import print_function, division
from collections import namedtuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import BSpline
from scipy.special import softmax

from .consts import DEGREE, ORDER, K_MIN, QUADRATURE_NODES
from .exceptions import (InvalidKnotsError, TooFewKnotsError,
                         MinimumKnotsError, DegenerateInsertionError,
                         OutOfRangeError)


class KnotConfig(namedtuple('KnotConfig', ['a', 'b', 'interior'])):
    """Boundary knots and the ordered vector of interior knots.

    Use `build_knot_config` to create one; it checks the ordering.

    Attributes
    ----------
    a, b : float
    interior : np.ndarray of K floats, read-only
    """
    __slots__ = ()

    @property
    def K(self):
        return len(self.interior)

    @property
    def n_basis(self):
        return len(self.interior) + ORDER

    @property
    def augmented(self):
        return np.concatenate([np.repeat(self.a, ORDER), self.interior,
                               np.repeat(self.b, ORDER)])

    @property
    def spans(self):
        """Support width of each basis function, length K+4."""
        t = self.augmented
        return t[ORDER:] - t[:-ORDER]

    @property
    def scale(self):
        """Normalising constant of each basis function."""
        return ORDER / self.spans

    @property
    def width(self):
        return self.b - self.a

    def contains(self, y):
        y = np.asarray(y, dtype=float)
        return (y >= self.a) & (y <= self.b)

    def __eq__(self, other):
        if not isinstance(other, KnotConfig):
            return NotImplemented
        return (self.a == other.a and self.b == other.b and
                np.array_equal(self.interior, other.interior))

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None


class SplineCoeffs(namedtuple('SplineCoeffs', ['uncon'])):
    """Unconstrained coefficient matrix with its softmax image.

    Attributes
    ----------
    uncon : (N, K+4) np.ndarray
    simplex : (N, K+4) np.ndarray
        Row-wise softmax of `uncon`; rows are non-negative and sum to one.
    """
    __slots__ = ()

    def __new__(cls, uncon):
        uncon = np.array(uncon, dtype=float, ndmin=2)
        return super(SplineCoeffs, cls).__new__(cls, uncon)

    @property
    def N(self):
        return self.uncon.shape[0]

    @property
    def n_basis(self):
        return self.uncon.shape[1]

    @property
    def simplex(self):
        return softmax(self.uncon, axis=1)

    @classmethod
    def from_simplex(cls, simplex):
        return cls(np.log(np.asarray(simplex, dtype=float)))

    def __eq__(self, other):
        if not isinstance(other, SplineCoeffs):
            return NotImplemented
        return np.array_equal(self.uncon, other.uncon)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None


def build_knot_config(a, b, interior):
    """Checks and freezes a knot configuration.

    Parameters
    ----------
    a, b : float
        Boundary knots, a < b.
    interior : sequence of floats
        Strictly increasing, inside the open interval (a, b), at least
        two entries.

    Returns
    -------
    KnotConfig

    Raises
    ------
    InvalidKnotsError if the ordering is violated.
    TooFewKnotsError if fewer than two interior knots are given.
    """
    a = float(a)
    b = float(b)
    interior = np.array(interior, dtype=float).ravel()
    if not a < b:
        raise InvalidKnotsError(
            "boundary knots must satisfy a < b, got a={}, b={}".format(a, b))
    if len(interior) < K_MIN:
        raise TooFewKnotsError(
            "need at least {} interior knots, got {}".format(
                K_MIN, len(interior)))
    if (not np.all(np.isfinite(interior)) or
            np.any(np.diff(interior) <= 0) or
            interior[0] <= a or interior[-1] >= b):
        raise InvalidKnotsError(
            "interior knots must be strictly increasing inside ({}, {}),"
            " got {}".format(a, b, interior.tolist()))
    interior.setflags(write=False)
    return KnotConfig(a, b, interior)


def check_in_range(cfg, y):
    """Raises OutOfRangeError for the first value of `y` outside [a, b]."""
    y = np.asarray(y, dtype=float)
    outside = ~cfg.contains(y)
    if np.any(outside):
        raise OutOfRangeError(y.ravel()[np.flatnonzero(outside.ravel())[0]],
                              (cfg.a, cfg.b))


def basis_design(cfg, y):
    """Sparse matrix of *unnormalised* basis values, shape (len(y), K+4).

    Multiply the columns by `cfg.scale` to obtain the normalised basis.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    check_in_range(cfg, y)
    return BSpline.design_matrix(y, cfg.augmented, DEGREE)


def basis_matrix(cfg, y):
    """Dense matrix of normalised basis values, shape (len(y), K+4)."""
    return basis_design(cfg, y).toarray() * cfg.scale


def eval_basis(cfg, y):
    """All K+4 normalised basis functions at a single point `y`.

    Raises
    ------
    OutOfRangeError if `y` is outside [a, b].
    """
    return basis_matrix(cfg, [y])[0]


def _check_simplex(coeffs, n_basis):
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape[-1] != n_basis:
        raise ValueError("expected {} coefficients per row, got {}".format(
            n_basis, coeffs.shape[-1]))
    if np.any(coeffs < 0) or np.any(np.abs(coeffs.sum(axis=-1) - 1) > 1e-12):
        raise ValueError("coefficients must be non-negative and sum to one")
    return coeffs


def emission_density(cfg, coeff_row, y):
    """Mixture density sum_k a_k B_k(y).

    Parameters
    ----------
    cfg : KnotConfig
    coeff_row : simplex vector of length K+4
    y : float or array of floats in [a, b]

    Returns
    -------
    float, or np.ndarray shaped like `y`
    """
    coeff_row = _check_simplex(coeff_row, cfg.n_basis)
    values = basis_design(cfg, y) @ (coeff_row * cfg.scale)
    if np.ndim(y) == 0:
        return float(values[0])
    return values


def emission_densities(cfg, simplex, y):
    """Densities of every state at every point, shape (len(y), N)."""
    simplex = np.atleast_2d(simplex)
    return basis_design(cfg, y) @ (simplex * cfg.scale).T


def _basis_antiderivative(cfg, k):
    if not 0 <= k < cfg.n_basis:
        raise IndexError("basis index {} out of range 0..{}".format(
            k, cfg.n_basis - 1))
    c = np.zeros(cfg.n_basis)
    c[k] = cfg.scale[k]
    return BSpline(cfg.augmented, c, DEGREE, extrapolate=False).antiderivative()


def basis_cdf(cfg, k, y):
    """Integral of the normalised basis `k` from `a` up to `y`.

    Computed exactly from the antiderivative of the piecewise polynomial.

    Parameters
    ----------
    cfg : KnotConfig
    k : int
        0-based basis index.
    y : float or array of floats in [a, b]

    Returns
    -------
    float or np.ndarray, values in [0, 1]
    """
    check_in_range(cfg, y)
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    values = np.clip(_basis_antiderivative(cfg, k)(y_arr), 0.0, 1.0)
    values[y_arr <= cfg.a] = 0.0
    values[y_arr >= cfg.b] = 1.0
    if np.ndim(y) == 0:
        return float(values[0])
    return values


def basis_quantile(cfg, k, p, tol=1e-10):
    """Inverse of `basis_cdf` by vectorised bisection on the support of
    basis `k`.

    Parameters
    ----------
    p : array of probabilities in [0, 1]
    tol : float
        Width of the final bracket.
    """
    p = np.atleast_1d(np.asarray(p, dtype=float))
    t = cfg.augmented
    lo = np.full(p.shape, t[k])
    hi = np.full(p.shape, t[k + ORDER])
    cdf = _basis_antiderivative(cfg, k)
    n_iter = int(np.ceil(np.log2((t[k + ORDER] - t[k]) / tol))) + 1
    for _ in range(max(n_iter, 1)):
        mid = 0.5 * (lo + hi)
        below = cdf(mid) < p
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def quadrature_rule(cfg, nodes=QUADRATURE_NODES):
    """Gauss-Legendre nodes and weights over [a, b], `nodes` per knot span.

    Integrals of polynomials up to degree 2*nodes-1 times any basis
    function are exact.
    """
    x, w = leggauss(nodes)
    breaks = np.concatenate([[cfg.a], cfg.interior, [cfg.b]])
    lo = breaks[:-1, None]
    half = 0.5 * np.diff(breaks)[:, None]
    points = lo + half * (x[None, :] + 1.0)
    weights = half * w[None, :]
    return points.ravel(), weights.ravel()


def basis_moments(cfg, power=1):
    """Integral of y**power * B_k(y) over [a, b] for every basis k."""
    points, weights = quadrature_rule(cfg)
    return (weights * points ** power) @ basis_matrix(cfg, points)


def _insertion_weights(augmented, n_star, r_c):
    t = augmented
    c1 = (r_c - t[n_star + 1]) / (t[n_star + 4] - t[n_star + 1])
    c2 = (r_c - t[n_star + 2]) / (t[n_star + 5] - t[n_star + 2])
    return c1, c2


def _log_abs_jacobian(c1, c2, old, n_star):
    diff = old[:, n_star + 3] - old[:, n_star + 2]
    with np.errstate(divide='ignore'):
        return (old.shape[0] * (np.log(c1) + np.log(c2)) +
                np.sum(np.log(np.abs(diff))))


def insert_knot_transform(cfg, coeffs, r_c, u):
    """Adds knot `r_c` and maps the coefficients into the bigger space.

    Columns up to the knot's span are kept, the next two are blended with
    the de Boor weights, the following one is blended with the free
    variable `u`, and the rest shift right by one.

    Parameters
    ----------
    cfg : KnotConfig with K interior knots
    coeffs : SplineCoeffs, shape (N, K+4)
    r_c : float in (a, b), distinct from every interior knot
    u : N floats in (0, 1)

    Returns
    -------
    new_cfg : KnotConfig with K+1 interior knots
    new_coeffs : SplineCoeffs, shape (N, K+5)
    log_jacobian : float
        log |det| of (coeffs, u) -> new_coeffs, summed over states.
        -inf when the map is singular.

    Raises
    ------
    OutOfRangeError if `r_c` is not inside (a, b).
    DegenerateInsertionError if `r_c` equals an existing knot.
    """
    r_c = float(r_c)
    if not cfg.a < r_c < cfg.b:
        raise OutOfRangeError(r_c, (cfg.a, cfg.b))
    if np.any(cfg.interior == r_c):
        raise DegenerateInsertionError(
            "knot {!r} already present".format(r_c))
    old = coeffs.uncon
    u = np.asarray(u, dtype=float).ravel()
    if len(u) != old.shape[0]:
        raise ValueError("need one u per state, got {} for {} states".format(
            len(u), old.shape[0]))
    if np.any((u <= 0) | (u >= 1)):
        raise ValueError("u must lie strictly inside (0, 1)")

    n_star = int(np.searchsorted(cfg.interior, r_c))
    c1, c2 = _insertion_weights(cfg.augmented, n_star, r_c)

    new = np.empty((old.shape[0], old.shape[1] + 1))
    new[:, :n_star + 1] = old[:, :n_star + 1]
    new[:, n_star + 1] = c1 * old[:, n_star + 1] + (1 - c1) * old[:, n_star]
    new[:, n_star + 2] = (c2 * old[:, n_star + 2] +
                          (1 - c2) * old[:, n_star + 1])
    new[:, n_star + 3] = u * old[:, n_star + 3] + (1 - u) * old[:, n_star + 2]
    new[:, n_star + 4:] = old[:, n_star + 3:]

    new_cfg = build_knot_config(
        cfg.a, cfg.b, np.insert(cfg.interior, n_star, r_c))
    log_jacobian = _log_abs_jacobian(c1, c2, old, n_star)
    return new_cfg, SplineCoeffs(new), log_jacobian


def delete_knot_transform(cfg, coeffs, d_star):
    """Removes interior knot number `d_star` (1-based); the inverse of
    `insert_knot_transform`.

    Returns
    -------
    new_cfg : KnotConfig with K-1 interior knots
    new_coeffs : SplineCoeffs, shape (N, K+3)
    u : (N,) array
        The values that would have produced `coeffs` by insertion.  They may
        fall outside (0, 1), or be NaN; the caller decides what to do.
    log_jacobian : float
        log |det| of the inverse map; minus the matching insertion term.

    Raises
    ------
    MinimumKnotsError if the configuration only has two interior knots.
    """
    K = cfg.K
    if K <= K_MIN:
        raise MinimumKnotsError(
            "cannot delete a knot when only {} remain".format(K))
    if not 1 <= d_star <= K:
        raise IndexError("knot index {} out of range 1..{}".format(d_star, K))
    r_c = cfg.interior[d_star - 1]
    reduced = build_knot_config(
        cfg.a, cfg.b, np.delete(cfg.interior, d_star - 1))
    n_star = d_star - 1
    c1, c2 = _insertion_weights(reduced.augmented, n_star, r_c)

    cur = coeffs.uncon
    old = np.empty((cur.shape[0], cur.shape[1] - 1))
    old[:, :n_star + 1] = cur[:, :n_star + 1]
    old[:, n_star + 1] = (cur[:, n_star + 1] -
                          (1 - c1) * old[:, n_star]) / c1
    old[:, n_star + 2] = (cur[:, n_star + 2] -
                          (1 - c2) * old[:, n_star + 1]) / c2
    old[:, n_star + 3:] = cur[:, n_star + 4:]

    with np.errstate(divide='ignore', invalid='ignore'):
        u = ((cur[:, n_star + 3] - old[:, n_star + 2]) /
             (old[:, n_star + 3] - old[:, n_star + 2]))
    log_jacobian = -_log_abs_jacobian(c1, c2, old, n_star)
    return reduced, SplineCoeffs(old), u, log_jacobian
