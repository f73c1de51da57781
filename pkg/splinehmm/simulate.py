"""Synthetic data with known hidden states and emission densities.

Presets
-------
model1 : two states, Normal(-15, 11^2) and the mixture
         0.35 Normal(-5, 9^2) + 0.65 Normal(30, 10^2), switching with
         probability 0.1.
model2 : three spline-emission states on [0, 1] (positively skewed,
         bimodal, negatively skewed).
model3 : two states whose emissions are equal-weight three-component
         normal mixtures with means (-4, 0, 8) and (-3, 1, 9), switching
         with probability rho.
zero-inflated : two zero-inflated spline states resembling rest
         sub-states of activity counts.
"""

from __future__ import print_function, division
import logging

import numpy as np
import pandas as pd
from scipy import stats

from .splines import (SplineCoeffs, build_knot_config, basis_quantile,
                      emission_densities)
from .hmm.params import HmmParams
from .hmm import _kernels
from .dataset import Dataset, padded_bounds
from .utils import as_generator
from .exceptions import InvalidParamsError

logger = logging.getLogger(__name__)

MODEL1_GAMMA = np.array([[0.9, 0.1],
                         [0.1, 0.9]])
MODEL1_EMISSIONS = [
    {'type': 'normal_mixture', 'weights': [1.0], 'means': [-15.0],
     'sds': [11.0]},
    {'type': 'normal_mixture', 'weights': [0.35, 0.65], 'means': [-5.0, 30.0],
     'sds': [9.0, 10.0]},
]

MODEL2_GAMMA = np.array([[0.85, 0.1, 0.05],
                         [0.075, 0.85, 0.075],
                         [0.05, 0.1, 0.85]])
MODEL2_KNOTS = np.linspace(0.1, 0.9, 9)
_MODEL2_POSITIVE_SKEW = np.array([1.0, 6.0, 10.0, 8.0, 5.0, 3.0, 2.0, 1.0,
                                  0.5, 0.3, 0.2, 0.1, 0.05])
MODEL2_WEIGHTS = np.array([
    _MODEL2_POSITIVE_SKEW,
    [0.2, 1.0, 6.0, 8.0, 3.0, 0.5, 0.3, 0.5, 3.0, 8.0, 6.0, 1.0, 0.2],
    _MODEL2_POSITIVE_SKEW[::-1],
])

MODEL3_EMISSIONS = [
    {'type': 'normal_mixture', 'weights': [1 / 3.0] * 3,
     'means': [-4.0, 0.0, 8.0], 'sds': [1.0] * 3},
    {'type': 'normal_mixture', 'weights': [1 / 3.0] * 3,
     'means': [-3.0, 1.0, 9.0], 'sds': [1.0] * 3},
]

# Rest sub-states: mostly-zero deep rest and restless rest.
SUBSTATE_GAMMA = np.array([[0.96, 0.04],
                           [0.11, 0.89]])
SUBSTATE_ZERO_WEIGHTS = np.array([0.9, 0.25])
SUBSTATE_BOUNDS = (0.0, 60.0)
SUBSTATE_KNOTS = np.linspace(6.0, 54.0, 9)
SUBSTATE_WEIGHTS = np.array([
    np.exp(-0.6 * np.arange(13)),
    np.exp(-0.5 * ((np.arange(13) - 5.0) / 2.5) ** 2),
])

# Active-period states of the activity simulator: (zero weight, gamma
# shape, gamma scale).
ACTIVE_EMISSIONS = [(0.15, 2.0, 40.0), (0.02, 4.0, 80.0)]
ACTIVE_GAMMA = np.array([[0.97, 0.03],
                         [0.05, 0.95]])


class GroundTruth(object):
    """A simulated series together with what generated it.

    Attributes
    ----------
    name : str
    states : np.ndarray of ints, 0-based
    obs : np.ndarray of floats
    bounds : (a, b) or None for an empty series
    delta, gamma : generating initial distribution and transition matrix
    emissions : list of dicts, one per state
        Parametric description of each emission ('normal_mixture',
        'spline' or 'gamma'); used by `density`.
    params : HmmParams or None
        Set for spline-emission generators.
    zero_weights : np.ndarray or None
    extra : dict
        Generator-specific arrays (e.g. sub-states).
    """

    def __init__(self, name, states, obs, bounds, delta, gamma, emissions,
                 params=None, zero_weights=None, extra=None):
        self.name = name
        self.states = np.asarray(states, dtype=int)
        self.obs = np.asarray(obs, dtype=float)
        if len(self.states) != len(self.obs):
            raise ValueError("states and observations differ in length")
        self.bounds = None if bounds is None else tuple(bounds)
        self.delta = np.asarray(delta, dtype=float)
        self.gamma = np.asarray(gamma, dtype=float)
        self.emissions = emissions
        self.params = params
        self.zero_weights = (None if zero_weights is None
                             else np.asarray(zero_weights, dtype=float))
        self.extra = extra or {}

    def __len__(self):
        return len(self.obs)

    @property
    def n_states(self):
        return len(self.delta)

    def density(self, i, y):
        """True density of the continuous part of state `i` at `y`."""
        y = np.asarray(y, dtype=float)
        spec = self.emissions[i]
        if spec['type'] == 'normal_mixture':
            return sum(w * stats.norm.pdf(y, m, s) for w, m, s in
                       zip(spec['weights'], spec['means'], spec['sds']))
        if spec['type'] == 'gamma':
            return stats.gamma.pdf(y, spec['shape'], scale=spec['scale'])
        if spec['type'] == 'spline':
            knots = build_knot_config(spec['a'], spec['b'], spec['knots'])
            inside = knots.contains(y)
            values = np.zeros(y.shape)
            values[inside] = emission_densities(
                knots, np.asarray(spec['coeffs'])[None, :], y[inside])[:, 0]
            return values
        raise ValueError("unknown emission type '{}'".format(spec['type']))

    @property
    def density_oracle(self):
        return self.density

    def to_dataset(self, bounds=None):
        return Dataset(self.obs, bounds=self.bounds if bounds is None
                       else bounds)

    def to_dict(self):
        return {
            'name': self.name,
            'n': len(self),
            'bounds': None if self.bounds is None else list(self.bounds),
            'delta': self.delta.tolist(),
            'gamma': self.gamma.tolist(),
            'emissions': self.emissions,
            'zero_weights': None if self.zero_weights is None
            else self.zero_weights.tolist(),
            'params': None if self.params is None else self.params.to_dict(),
            'states': self.states.tolist(),
            'extra': {key: np.asarray(value).tolist() if np.ndim(value)
                      else value for key, value in self.extra.items()},
        }

    @classmethod
    def from_dict(cls, d):
        params = None
        if d.get('params') is not None:
            params = HmmParams.from_dict(d['params'])
        states = d.get('states') or []
        return cls(d['name'], states, np.full(len(states), np.nan),
                   d.get('bounds'), d['delta'], d['gamma'], d['emissions'],
                   params=params, zero_weights=d.get('zero_weights'),
                   extra=d.get('extra'))


def simulate_markov_chain(delta, gamma, n, rng):
    """State path of length n, 0-based labels."""
    gamma = np.asarray(gamma, dtype=float)
    return _kernels.sample_path(np.cumsum(delta),
                                np.ascontiguousarray(np.cumsum(gamma, axis=1)),
                                rng.uniform(size=n))


def _sample_normal_mixtures(states, emissions, rng):
    obs = np.empty(len(states))
    for i, spec in enumerate(emissions):
        idx = np.flatnonzero(states == i)
        if len(idx) == 0:
            continue
        component = rng.choice(len(spec['weights']), size=len(idx),
                               p=spec['weights'])
        obs[idx] = rng.normal(np.asarray(spec['means'])[component],
                              np.asarray(spec['sds'])[component])
    return obs


def _sample_spline(knots, simplex, states, rng):
    obs = np.empty(len(states))
    for i in range(simplex.shape[0]):
        idx = np.flatnonzero(states == i)
        if len(idx) == 0:
            continue
        basis = rng.choice(knots.n_basis, size=len(idx), p=simplex[i])
        for k in np.unique(basis):
            which = idx[basis == k]
            obs[which] = basis_quantile(knots, k, rng.uniform(size=len(which)))
    return obs


def _spline_emissions(params):
    knots = params.knots
    return [{'type': 'spline', 'a': knots.a, 'b': knots.b,
             'knots': knots.interior.tolist(), 'coeffs': row.tolist()}
            for row in params.simplex]


def _normal_mixture_truth(name, emissions, gamma, n, seed):
    rng = as_generator(seed)
    delta = np.full(len(gamma), 1.0 / len(gamma))
    states = simulate_markov_chain(delta, gamma, n, rng)
    obs = _sample_normal_mixtures(states, emissions, rng)
    bounds = padded_bounds(obs) if n > 0 else None
    return GroundTruth(name, states, obs, bounds, delta, gamma, emissions)


def simulate_model1(n=800, seed=None):
    """Two-state series with a skewed bimodal second state.

    Returns
    -------
    GroundTruth; bounds are the data range padded by 5%.
    """
    return _normal_mixture_truth('model1', MODEL1_EMISSIONS, MODEL1_GAMMA,
                                 n, seed)


def simulate_model3(n=1000, rho=0.05, seed=None):
    """Two states with overlapping trimodal emissions, switching with
    probability `rho`."""
    gamma = np.array([[1.0 - rho, rho], [rho, 1.0 - rho]])
    return _normal_mixture_truth('model3', MODEL3_EMISSIONS, gamma, n, seed)


def simulate_spline_hmm(params, n, seed=None, name='spline'):
    """Series from a spline-emission HMM by inverse-transform sampling.

    Each observation picks a basis function from its state's coefficient
    simplex and inverts that basis function's distribution function.

    Raises
    ------
    InvalidParamsError
    """
    params.validate()
    rng = as_generator(seed)
    states = simulate_markov_chain(params.delta, params.gamma, n, rng)
    obs = _sample_spline(params.knots, params.simplex, states, rng)
    return GroundTruth(name, states, obs, (params.knots.a, params.knots.b),
                       params.delta, params.gamma, _spline_emissions(params),
                       params=params)


def simulate_zero_inflated(params, n, seed=None, name='zero-inflated'):
    """Like `simulate_spline_hmm`, but state i emits an exact zero with
    probability w_i.

    Raises
    ------
    InvalidParamsError if `params` has no zero weights.
    """
    if params.zero_weights is None:
        raise InvalidParamsError("zero-inflated simulation needs zero"
                                 " weights")
    params.validate()
    rng = as_generator(seed)
    states = simulate_markov_chain(params.delta, params.gamma, n, rng)
    obs = _sample_spline(params.knots, params.simplex, states, rng)
    zeros = rng.uniform(size=n) < params.zero_weights[states]
    obs[zeros] = 0.0
    return GroundTruth(name, states, obs, (params.knots.a, params.knots.b),
                       params.delta, params.gamma, _spline_emissions(params),
                       params=params, zero_weights=params.zero_weights)


def model2_params():
    """Three-state spline HMM on [0, 1] with 9 equally spaced interior
    knots."""
    return HmmParams(
        knots=build_knot_config(0.0, 1.0, MODEL2_KNOTS),
        coeffs=SplineCoeffs.from_simplex(
            MODEL2_WEIGHTS / MODEL2_WEIGHTS.sum(axis=1, keepdims=True)),
        delta_uncon=np.ones(3),
        gamma_uncon=MODEL2_GAMMA,
        zeta=1.0)


def simulate_model2(n=1500, seed=None):
    return simulate_spline_hmm(model2_params(), n, seed, name='model2')


def substate_params():
    """Two zero-inflated rest sub-states on [0, 60]."""
    return HmmParams(
        knots=build_knot_config(SUBSTATE_BOUNDS[0], SUBSTATE_BOUNDS[1],
                                SUBSTATE_KNOTS),
        coeffs=SplineCoeffs.from_simplex(
            SUBSTATE_WEIGHTS / SUBSTATE_WEIGHTS.sum(axis=1, keepdims=True)),
        delta_uncon=np.ones(2),
        gamma_uncon=SUBSTATE_GAMMA,
        zeta=1.0,
        zero_weights=SUBSTATE_ZERO_WEIGHTS)


def simulate_activity(n_days=4, seed=None, samples_per_day=1440,
                      rest_fraction=1 / 3.0):
    """Minute-level activity counts with one rest period per day.

    The rest period (main state 0) lasts about `rest_fraction` of the day
    and follows the rest sub-state HMM of `substate_params`.  The rest of
    the day switches between two active states with zero-inflated gamma
    emissions.

    Returns
    -------
    GroundTruth
        `states` holds the main states (0 = rest); `extra['sub_states']`
        holds the rest sub-states, -1 outside rest periods.
    """
    rng = as_generator(seed)
    sub = substate_params()
    states, sub_states, obs = [], [], []
    for day in range(n_days):
        rest = int(round(samples_per_day * rest_fraction +
                         rng.integers(-30, 31)))
        active = samples_per_day - rest
        sub_truth = simulate_zero_inflated(sub, rest, rng)
        path = simulate_markov_chain(np.array([0.5, 0.5]), ACTIVE_GAMMA,
                                     active, rng)
        values = np.empty(active)
        for i, (w, shape, scale) in enumerate(ACTIVE_EMISSIONS):
            idx = np.flatnonzero(path == i)
            values[idx] = stats.gamma.rvs(shape, scale=scale, size=len(idx),
                                          random_state=rng)
            values[idx[rng.uniform(size=len(idx)) < w]] = 0.0
        states.append(np.concatenate([path + 1, np.zeros(rest, dtype=int)]))
        sub_states.append(np.concatenate([np.full(active, -1),
                                          sub_truth.states]))
        obs.append(np.concatenate([values, sub_truth.obs]))
    states = np.concatenate(states) if states else np.zeros(0, dtype=int)
    obs = np.concatenate(obs) if obs else np.zeros(0)
    emissions = ([{'type': 'spline', 'a': SUBSTATE_BOUNDS[0],
                   'b': SUBSTATE_BOUNDS[1], 'knots': SUBSTATE_KNOTS.tolist(),
                   'coeffs': (SUBSTATE_WEIGHTS[0] /
                              SUBSTATE_WEIGHTS[0].sum()).tolist()}] +
                 [{'type': 'gamma', 'shape': shape, 'scale': scale}
                  for _, shape, scale in ACTIVE_EMISSIONS])
    bounds = padded_bounds(obs, lower=0.0) if len(obs) else None
    return GroundTruth(
        'activity', states, obs, bounds, np.full(3, 1 / 3.0),
        np.eye(3), emissions,
        zero_weights=[np.nan] + [w for w, _, _ in ACTIVE_EMISSIONS],
        extra={'sub_states': (np.concatenate(sub_states) if sub_states
                              else np.zeros(0, dtype=int)),
               'samples_per_day': samples_per_day})


def activity_frame(truth, start='2020-01-01', freq='1min'):
    """pd.DataFrame with `timestamp` and `count` columns."""
    index = pd.date_range(start, periods=len(truth), freq=freq)
    return pd.DataFrame({'timestamp': index, 'count': truth.obs})


def simulate_preset(preset, n=None, seed=None, rho=0.05):
    """Dispatches on the preset names used by the command line."""
    if preset == 'model1':
        return simulate_model1(800 if n is None else n, seed)
    if preset == 'model2' or preset == 'spline':
        return simulate_model2(1500 if n is None else n, seed)
    if preset == 'model3':
        return simulate_model3(1000 if n is None else n, rho, seed)
    if preset == 'zero-inflated':
        return simulate_zero_inflated(substate_params(),
                                      2000 if n is None else n, seed)
    if preset == 'activity':
        return simulate_activity(4 if n is None else n, seed)
    raise ValueError("unknown preset '{}'".format(preset))
