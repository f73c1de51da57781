"""Priors on the spline-HMM parameters and starting states for the sampler.

The joint prior factorises into

* a uniform prior on the number of interior knots K in {2, ..., K_max};
* the density K! / (b - a)^K of K ordered uniform knots;
* a log-gamma(zeta) prior on every unconstrained coefficient, i.e.
  exp(a~) ~ Gamma(zeta, 1);
* Gamma(eps1, 1) on every unconstrained transition weight and
  Gamma(eps2, 1) on every unconstrained initial weight;
* Gamma(zeta_shape, zeta_rate) on zeta;
* Uniform(0, 1) on each zero weight.

Out-of-support states get a log prior of -inf instead of an exception.
"""

from __future__ import print_function, division
import logging

import numpy as np
from scipy.special import gammaln, xlogy
from sklearn.cluster import KMeans

from .consts import K_MIN, K_INIT_MAX
from .splines import build_knot_config, basis_matrix, basis_moments
from .splines import SplineCoeffs
from .hmm.params import HmmParams
from .utils import as_generator
from .exceptions import ConfigError, EmptyDataError

logger = logging.getLogger(__name__)

# Floor on initial coefficient weights so that every basis keeps some mass.
_WEIGHT_FLOOR = 1e-3


class PriorConfig(object):
    """Hyperparameters of the joint prior.

    Attributes
    ----------
    k_max : int
    eps1 : float
        Shape of the gamma prior on unconstrained transition weights.
    eps2 : float
        Shape of the gamma prior on unconstrained initial weights.
    zeta_shape, zeta_rate : float
    bounds : (a, b) or None
        Support of the emissions.  None means "take it from the data".
    pad : float
        Padding used when bounds are derived from the data.
    """

    def __init__(self, k_max=50, eps1=1.0, eps2=1.0, zeta_shape=1.0,
                 zeta_rate=1.0, bounds=None, pad=0.05):
        self.k_max = int(k_max)
        self.eps1 = float(eps1)
        self.eps2 = float(eps2)
        self.zeta_shape = float(zeta_shape)
        self.zeta_rate = float(zeta_rate)
        self.bounds = None if bounds is None else tuple(
            float(v) for v in bounds)
        self.pad = float(pad)
        self.check()

    def check(self):
        if self.k_max < K_MIN:
            raise ConfigError('k_max', "k_max must be at least {}, got {}"
                              .format(K_MIN, self.k_max))
        for key in ('eps1', 'eps2', 'zeta_shape', 'zeta_rate'):
            if not getattr(self, key) > 0:
                raise ConfigError(key, "{} must be positive, got {}".format(
                    key, getattr(self, key)))
        if self.pad < 0:
            raise ConfigError('pad', "pad must be non-negative")
        if self.bounds is not None and not self.bounds[0] < self.bounds[1]:
            raise ConfigError('a', "bounds must satisfy a < b, got {}"
                              .format(self.bounds))

    def __repr__(self):
        return ("PriorConfig(k_max={}, eps1={}, eps2={}, zeta_shape={},"
                " zeta_rate={}, bounds={})".format(
                    self.k_max, self.eps1, self.eps2, self.zeta_shape,
                    self.zeta_rate, self.bounds))

    def to_dict(self):
        d = dict(k_max=self.k_max, eps1=self.eps1, eps2=self.eps2,
                 zeta_shape=self.zeta_shape, zeta_rate=self.zeta_rate,
                 pad=self.pad)
        if self.bounds is not None:
            d['a'], d['b'] = self.bounds
        return d


def log_gamma_density(x, shape, rate=1.0):
    """Sum of Gamma(shape, rate) log densities; -inf if any x <= 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        return -np.inf
    return float(np.sum(shape * np.log(rate) + xlogy(shape - 1.0, x) -
                        rate * x - gammaln(shape)))


def log_loggamma_density(x, zeta):
    """Sum of log densities of log(G), G ~ Gamma(zeta, 1)."""
    x = np.asarray(x, dtype=float)
    return float(np.sum(zeta * x - np.exp(x)) - x.size * gammaln(zeta))


def log_prior_k(K, k_max):
    if not K_MIN <= K <= k_max:
        return -np.inf
    return -np.log(k_max - K_MIN + 1)


def log_prior_knots(knots):
    """Density of K ordered uniform knots on (a, b)."""
    K = knots.K
    return float(gammaln(K + 1) - K * np.log(knots.width))


def log_prior(params, cfg):
    """Log of the joint prior density.

    Parameters
    ----------
    params : HmmParams
    cfg : PriorConfig

    Returns
    -------
    float; -inf outside the support.
    """
    lp = log_prior_k(params.K, cfg.k_max)
    if lp == -np.inf:
        return lp
    interior = params.knots.interior
    if (np.any(np.diff(interior) <= 0) or interior[0] <= params.knots.a or
            interior[-1] >= params.knots.b):
        return -np.inf
    zeta = params.zeta
    if not zeta > 0:
        return -np.inf
    lp += log_prior_knots(params.knots)
    lp += log_gamma_density(zeta, cfg.zeta_shape, cfg.zeta_rate)
    lp += log_loggamma_density(params.coeffs.uncon, zeta)
    lp += log_gamma_density(params.gamma_uncon, cfg.eps1)
    lp += log_gamma_density(params.delta_uncon, cfg.eps2)
    w = params.zero_weights
    if w is not None and (np.any(w < 0) or np.any(w > 1) or
                          np.sum(w == 1) > 1):
        return -np.inf
    if not np.isfinite(lp):
        return -np.inf
    return float(lp)


def _initial_knots(observed, K, a, b):
    quantiles = np.quantile(observed, np.arange(1, K + 1) / (K + 1.0))
    if (np.all(np.diff(quantiles) > 0) and quantiles[0] > a and
            quantiles[-1] < b):
        return quantiles
    return np.linspace(a, b, K + 2)[1:-1]


def _cluster_labels(values, N, rng):
    """Assigns each value to one of N clusters ordered by their centre."""
    if N == 1:
        return np.zeros(len(values), dtype=int)
    if len(np.unique(values)) < N:
        ranks = np.argsort(np.argsort(values, kind='stable'), kind='stable')
        return (ranks * N // len(values)).astype(int)
    k_means = KMeans(n_clusters=N, n_init=10,
                     random_state=int(rng.integers(2 ** 31 - 1)))
    labels = k_means.fit_predict(values.reshape(-1, 1))
    order = np.argsort(k_means.cluster_centers_.ravel())
    relabel = np.empty(N, dtype=int)
    relabel[order] = np.arange(N)
    return relabel[labels]


def _histogram_weights(knots, values):
    """One EM step from uniform weights: average basis responsibilities."""
    if len(values) == 0:
        return np.full(knots.n_basis, 1.0 / knots.n_basis)
    B = basis_matrix(knots, values)
    resp = B / B.sum(axis=1, keepdims=True)
    weights = resp.mean(axis=0) + _WEIGHT_FLOOR
    return weights / weights.sum()


def _anchor_weights(knots, anchor):
    centres = basis_moments(knots, 1)
    spread = 0.1 * knots.width
    weights = np.exp(-0.5 * ((centres - anchor) / spread) ** 2)
    weights += _WEIGHT_FLOOR
    return weights / weights.sum()


def init_state(data, N, cfg, seed=None, anchors=None, zero_inflated=False):
    """Starting parameter state for a chain.

    K is drawn uniformly from {2, ..., min(10, K_max)}; interior knots sit
    at equally spaced quantiles of the observed values.  Without anchors the
    observations are split into N clusters with k-means and each state's
    coefficients come from a histogram step on its cluster; with anchors
    the coefficients concentrate on basis functions centred near each
    anchor.  delta~ = 1, Gamma~ has 5 on the diagonal and 1 elsewhere,
    zeta = 1.

    Parameters
    ----------
    data : Dataset
    N : int
    cfg : PriorConfig
    seed : seed or np.random.Generator
    anchors : sequence of N floats, optional
    zero_inflated : bool
        If True, zero weights start at each cluster's fraction of zeros.

    Returns
    -------
    HmmParams

    Raises
    ------
    EmptyDataError if nothing is observed.
    """
    if N < 1:
        raise ValueError("N must be at least 1, got {}".format(N))
    rng = as_generator(seed)
    observed = data.observed
    if len(observed) == 0:
        raise EmptyDataError("cannot initialise from a dataset with no"
                             " observed values")
    a, b = data.bounds
    K = int(rng.integers(K_MIN, min(K_INIT_MAX, cfg.k_max) + 1))
    positive = observed[observed != 0] if zero_inflated else observed
    if len(positive) == 0:
        positive = observed
    knots = build_knot_config(a, b, _initial_knots(positive, K, a, b))

    labels = _cluster_labels(observed, N, rng)
    if anchors is not None:
        anchors = np.asarray(anchors, dtype=float).ravel()
        if len(anchors) != N:
            raise ValueError("need {} anchors, got {}".format(N, len(anchors)))
        simplex = np.array([_anchor_weights(knots, anchor)
                            for anchor in anchors])
    else:
        simplex = []
        for i in range(N):
            members = observed[labels == i]
            if zero_inflated:
                members = members[members != 0]
            simplex.append(_histogram_weights(knots, members))
        simplex = np.array(simplex)

    zero_weights = None
    if zero_inflated:
        zero_weights = np.array([
            np.mean(observed[labels == i] == 0) if np.any(labels == i)
            else 0.5 for i in range(N)])
        zero_weights = np.clip(zero_weights, 0.01, 0.99)

    params = HmmParams(
        knots=knots,
        coeffs=SplineCoeffs.from_simplex(simplex),
        delta_uncon=np.ones(N),
        gamma_uncon=np.ones((N, N)) + 4.0 * np.eye(N),
        zeta=1.0,
        zero_weights=zero_weights)
    logger.debug("Initial state: N=%d, K=%d", N, K)
    return params.validate()


def draw_from_prior(N, cfg, seed=None, zero_inflated=False):
    """One exact draw from the joint prior.

    Parameters
    ----------
    N : int
    cfg : PriorConfig with bounds set
    """
    if cfg.bounds is None:
        raise ConfigError('a', "drawing from the prior needs bounds")
    rng = as_generator(seed)
    a, b = cfg.bounds
    K = int(rng.integers(K_MIN, cfg.k_max + 1))
    interior = np.sort(rng.uniform(a, b, size=K))
    zeta = rng.gamma(cfg.zeta_shape, 1.0 / cfg.zeta_rate)
    uncon = np.log(rng.gamma(zeta, 1.0, size=(N, K + 4)))
    zero_weights = rng.uniform(size=N) if zero_inflated else None
    return HmmParams(
        knots=build_knot_config(a, b, interior),
        coeffs=SplineCoeffs(uncon),
        delta_uncon=rng.gamma(cfg.eps2, 1.0, size=N),
        gamma_uncon=rng.gamma(cfg.eps1, 1.0, size=(N, N)),
        zeta=zeta,
        zero_weights=zero_weights)
