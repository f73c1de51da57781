from __future__ import print_function, division
import itertools
import logging

import numpy as np

from .splines import (SplineCoeffs, build_knot_config, basis_moments,
                      emission_densities, check_in_range)
from .hmm.params import HmmParams
from .results import Summary
from .utils import stationary_distribution

logger = logging.getLogger(__name__)

RELABEL_METHODS = ('mean', 'reference')


def state_moments(params):
    """First and second moments of each state's emission distribution.

    With zero inflation the point mass at zero is included, so the moments
    are scaled by (1 - w_i).

    Returns
    -------
    m1, m2 : (N,) np.ndarrays
    """
    knots = params.knots
    simplex = params.simplex
    m1 = simplex @ basis_moments(knots, 1)
    m2 = simplex @ basis_moments(knots, 2)
    if params.zero_weights is not None:
        m1 = m1 * (1 - params.zero_weights)
        m2 = m2 * (1 - params.zero_weights)
    return m1, m2


def mean_order(params):
    """Permutation sorting the states by emission mean, then by second
    moment."""
    m1, m2 = state_moments(params)
    return np.lexsort((m2, m1))


def _features(params):
    m1, _ = state_moments(params)
    return np.column_stack([m1, np.diag(params.gamma)])


def _closest_permutation(params, reference):
    features = _features(params)
    best, best_distance = None, np.inf
    for perm in itertools.permutations(range(params.N)):
        distance = np.sum((features[list(perm)] - reference) ** 2)
        if distance < best_distance:
            best, best_distance = perm, distance
    return np.array(best)


def relabel(trace, method='mean'):
    """Undoes label switching draw by draw.

    Parameters
    ----------
    trace : Trace
    method : {'mean', 'reference'}
        'mean' orders the states of every draw by emission mean (ties by
        second moment).  'reference' first does that, then permutes every
        draw to be closest, in emission means and persistence
        probabilities, to the draw of highest posterior density.

    Returns
    -------
    Trace with permuted draws and unchanged log densities.
    """
    if method not in RELABEL_METHODS:
        raise ValueError("method must be one of {}, got '{}'".format(
            RELABEL_METHODS, method))
    draws = [params.permute(mean_order(params)) for params in trace]
    if method == 'reference' and draws:
        best = int(np.argmax(trace.loglik + trace.logprior))
        reference = _features(draws[best])
        draws = [params.permute(_closest_permutation(params, reference))
                 for params in draws]
    return trace.with_draws(draws)


def _stack_modal(trace):
    trace.check_not_empty()
    modal = trace.modal_K()
    sub = trace.at_K(modal)
    values = {
        'knots': np.array([p.knots.interior for p in sub]),
        'coeffs': np.array([p.simplex for p in sub]),
        'delta': np.array([p.delta for p in sub]),
        'gamma': np.array([p.gamma for p in sub]),
        'zeta': np.array([p.zeta for p in sub]),
    }
    if sub[0].zero_weights is not None:
        values['w'] = np.array([p.zero_weights for p in sub])
    return modal, sub, values


def _modal_means(trace):
    modal, sub, values = _stack_modal(trace)
    mean = {key: value.mean(axis=0) for key, value in values.items()}
    mean['zeta'] = float(mean['zeta'])
    return sub, mean


def summarize(trace, grid=None, grid_size=512, band=(5, 95)):
    """Posterior summary conditioned on the modal number of knots.

    Parameters
    ----------
    trace : Trace, normally relabelled
    grid : array of points in [a, b], optional
        Defaults to `grid_size` equally spaced points over [a, b].
    band : (lo, hi) percentiles of the pointwise density band

    Returns
    -------
    Summary

    Raises
    ------
    EmptyTraceError
    """
    modal, sub, values = _stack_modal(trace)
    mean = {key: value.mean(axis=0) for key, value in values.items()}
    sd = {key: value.std(axis=0) for key, value in values.items()}
    mean['zeta'] = float(mean['zeta'])
    sd['zeta'] = float(sd['zeta'])

    knots0 = sub[0].knots
    if grid is None:
        grid = np.linspace(knots0.a, knots0.b, grid_size)
    grid = np.asarray(grid, dtype=float)
    check_in_range(knots0, grid)
    curves = np.array([emission_densities(p.knots, p.simplex, grid).T
                       for p in sub])
    summary = Summary(
        K_frequencies=trace.K_frequencies(),
        modal_K=modal,
        mean=mean,
        sd=sd,
        bounds=(knots0.a, knots0.b),
        grid=grid,
        density_mean=curves.mean(axis=0),
        density_lo=np.percentile(curves, band[0], axis=0),
        density_hi=np.percentile(curves, band[1], axis=0),
        stationary=stationary_distribution(mean['gamma']),
        n_draws=len(sub),
        band=band)
    logger.info("Modal K=%d with posterior probability %.3f (%d draws)",
                summary.modal_K, summary.modal_prob, summary.n_draws)
    return summary


def point_estimate(source):
    """Single HMM built from posterior means at the modal K.

    Parameters
    ----------
    source : Trace or Summary

    Returns
    -------
    HmmParams
    """
    if isinstance(source, Summary):
        bounds, mean = source.bounds, source.mean
    else:
        sub, mean = _modal_means(source)
        bounds = (sub[0].knots.a, sub[0].knots.b)
    w = mean.get('w')
    return HmmParams(
        knots=build_knot_config(bounds[0], bounds[1], mean['knots']),
        coeffs=SplineCoeffs.from_simplex(mean['coeffs']),
        delta_uncon=mean['delta'],
        gamma_uncon=mean['gamma'],
        zeta=mean['zeta'],
        zero_weights=w)
