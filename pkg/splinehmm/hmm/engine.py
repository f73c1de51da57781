"""Likelihood, decoding and smoothing for spline-emission HMMs.

Missing time points contribute an emission value of one for every state,
i.e. the diagonal emission matrix is replaced by the identity.  With zero
inflation the emission of state i is ``w_i`` at an exact zero and
``(1 - w_i) f_i(y)`` at a positive value.
"""

from __future__ import print_function, division

import numpy as np

from ..splines import basis_design
from ..exceptions import NumericError, UnderflowError
from . import _kernels


def observed_design(knots, data):
    """Sparse unnormalised basis values at the observed time points.

    Only depends on the knots, so callers that update other parameters
    can reuse it.
    """
    observed = data.observed
    if len(observed) == 0:
        return None
    return basis_design(knots, observed)


def emission_probs(params, data, design=None):
    """Emission values of every state at every time point.

    Parameters
    ----------
    params : HmmParams
    data : Dataset
    design : sparse matrix, optional
        Output of `observed_design` for `params.knots`.

    Returns
    -------
    probs : (n, N) np.ndarray

    Raises
    ------
    NumericError if any value is not finite or is negative.
    """
    probs = np.ones((data.n, params.N))
    observed = ~data.missing
    if not np.any(observed):
        return probs
    if design is None:
        design = observed_design(params.knots, data)
    dens = design @ (params.simplex * params.knots.scale).T
    w = params.zero_weights
    if w is not None:
        y = data.obs[observed]
        dens = np.where((y == 0)[:, None], w[None, :],
                        (1.0 - w)[None, :] * dens)
    probs[observed] = dens
    bad = ~np.isfinite(probs) | (probs < 0)
    if np.any(bad):
        raise NumericError("non-finite emission density",
                           time_index=int(np.flatnonzero(bad.any(axis=1))[0]))
    return probs


def _check_status(status):
    if status >= 0:
        raise UnderflowError("forward vector vanished", time_index=int(status))


def log_likelihood_from_probs(params, probs):
    loglik, status = _kernels.forward_loglik(
        params.delta, params.gamma, probs)
    _check_status(status)
    return loglik


def log_likelihood(params, data):
    """Log of delta P(y_1) Gamma P(y_2) ... Gamma P(y_n) 1.

    Evaluated with the scaled forward recursion, cost linear in n.

    Raises
    ------
    NumericError, UnderflowError
    """
    return log_likelihood_from_probs(params, emission_probs(params, data))


def viterbi(params, data):
    """Most probable state path, 0-based labels.

    Log-domain recursion; ties go to the lower state index.

    Returns
    -------
    path : np.ndarray of n ints in 0..N-1
    """
    probs = emission_probs(params, data)
    with np.errstate(divide='ignore'):
        path, _, status = _kernels.viterbi_path(
            np.log(params.delta), np.log(params.gamma), np.log(probs))
    _check_status(status)
    return path


def smoothed_probs(params, data):
    """Posterior state probabilities P(x_t = i | y), shape (n, N)."""
    probs = emission_probs(params, data)
    posterior, _, status = _kernels.forward_backward(
        params.delta, params.gamma, probs)
    _check_status(status)
    return posterior


def cumulative_probs(smoothed):
    """P(x_t <= i | y) from the output of `smoothed_probs`."""
    return np.cumsum(smoothed, axis=1)
