"""Compiled inner loops of the HMM recursions.

Each function returns a status index alongside its result: -1 when the
recursion went through, otherwise the first time index at which the
scaled forward (or backward) vector stopped being positive and finite.
"""

from __future__ import print_function, division

import numba
import numpy as np


@numba.jit(nopython=True, cache=True)
def forward_loglik(delta, gamma, probs):
    n, N = probs.shape
    alpha = np.empty(N)
    new = np.empty(N)
    loglik = 0.0
    for i in range(N):
        alpha[i] = delta[i] * probs[0, i]
    total = alpha.sum()
    if not (total > 0.0 and np.isfinite(total)):
        return -np.inf, 0
    loglik += np.log(total)
    alpha /= total
    for t in range(1, n):
        for j in range(N):
            acc = 0.0
            for i in range(N):
                acc += alpha[i] * gamma[i, j]
            new[j] = acc * probs[t, j]
        total = new.sum()
        if not (total > 0.0 and np.isfinite(total)):
            return -np.inf, t
        loglik += np.log(total)
        for j in range(N):
            alpha[j] = new[j] / total
    return loglik, -1


@numba.jit(nopython=True, cache=True)
def forward_backward(delta, gamma, probs):
    n, N = probs.shape
    alpha = np.empty((n, N))
    scale = np.empty(n)
    posterior = np.empty((n, N))
    for i in range(N):
        alpha[0, i] = delta[i] * probs[0, i]
    total = alpha[0].sum()
    if not (total > 0.0 and np.isfinite(total)):
        return posterior, -np.inf, 0
    scale[0] = total
    alpha[0] /= total
    for t in range(1, n):
        for j in range(N):
            acc = 0.0
            for i in range(N):
                acc += alpha[t - 1, i] * gamma[i, j]
            alpha[t, j] = acc * probs[t, j]
        total = alpha[t].sum()
        if not (total > 0.0 and np.isfinite(total)):
            return posterior, -np.inf, t
        scale[t] = total
        alpha[t] /= total

    beta = np.ones(N)
    new = np.empty(N)
    for i in range(N):
        posterior[n - 1, i] = alpha[n - 1, i]
    for t in range(n - 2, -1, -1):
        for i in range(N):
            acc = 0.0
            for j in range(N):
                acc += gamma[i, j] * probs[t + 1, j] * beta[j]
            new[i] = acc / scale[t + 1]
        for i in range(N):
            beta[i] = new[i]
        total = 0.0
        for i in range(N):
            posterior[t, i] = alpha[t, i] * beta[i]
            total += posterior[t, i]
        if not (total > 0.0 and np.isfinite(total)):
            return posterior, -np.inf, t
        for i in range(N):
            posterior[t, i] /= total
    return posterior, np.log(scale).sum(), -1


@numba.jit(nopython=True, cache=True)
def viterbi_path(log_delta, log_gamma, log_probs):
    n, N = log_probs.shape
    score = np.empty(N)
    new = np.empty(N)
    back = np.zeros((n, N), dtype=np.int64)
    path = np.zeros(n, dtype=np.int64)
    for i in range(N):
        score[i] = log_delta[i] + log_probs[0, i]
    for t in range(1, n):
        for j in range(N):
            best = -np.inf
            arg = 0
            for i in range(N):
                candidate = score[i] + log_gamma[i, j]
                # strict comparison keeps the lowest index on ties
                if candidate > best:
                    best = candidate
                    arg = i
            new[j] = best + log_probs[t, j]
            back[t, j] = arg
        for j in range(N):
            score[j] = new[j]
    best = -np.inf
    arg = 0
    for i in range(N):
        if score[i] > best:
            best = score[i]
            arg = i
    if best == -np.inf:
        return path, best, n - 1
    path[n - 1] = arg
    for t in range(n - 1, 0, -1):
        path[t - 1] = back[t, path[t]]
    return path, best, -1


@numba.jit(nopython=True, cache=True)
def sample_path(cum_delta, cum_gamma, uniforms):
    """Markov chain path from cumulative initial and transition rows."""
    n = len(uniforms)
    N = len(cum_delta)
    path = np.empty(n, dtype=np.int64)
    if n == 0:
        return path
    state = np.searchsorted(cum_delta, uniforms[0], side='right')
    path[0] = min(state, N - 1)
    for t in range(1, n):
        state = np.searchsorted(cum_gamma[path[t - 1]], uniforms[t],
                                side='right')
        path[t] = min(state, N - 1)
    return path
