"""Choosing the number of hidden states from parallel chains.

One chain is run per candidate N.  The i-th draws of all chains form
one parallel sample, from which

* posterior model probabilities are the average over draws of the
  normalised per-draw scores log f(y | theta) + log f(theta | N) + log P(N);
* DIC uses the posterior-density-maximising draw as the plug-in estimate.

The ensemble average is biased once the parallel draws are not exact
posterior samples; no correction is applied.  Prior densities of the
parameters of the other candidates are taken as constant and dropped.
"""

from __future__ import print_function, division
import logging
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.special import logsumexp

from .sampler.chain import run_chain
from .hmm.engine import log_likelihood
from .prior import log_prior
from .results import SelectionResult
from .utils import spawn_seeds
from .exceptions import (ChainError, DrawCountMismatchError, EmptyTraceError,
                         SplineHMMError)

logger = logging.getLogger(__name__)


def _run_candidate(args):
    data, N, prior_cfg, tuning, schedule, seed, chain_kwargs = args
    return run_chain(data, N, prior_cfg, tuning, schedule, seed=seed,
                     **chain_kwargs)


def run_parallel(data, candidates, prior_cfg, tuning, schedule, seed=None,
                 threads=1, **chain_kwargs):
    """One independent chain per candidate number of states.

    Parameters
    ----------
    data : Dataset
    candidates : sequence of distinct ints
    prior_cfg, tuning, schedule : shared by all chains
    seed : master seed; each chain gets its own spawned child seed
    threads : int
        Maximum number of chains run at once (worker processes).  1 runs
        them one after the other in this process.
    **chain_kwargs : passed to `run_chain`

    Returns
    -------
    list of Trace, in the order of `candidates`.

    Raises
    ------
    ChainError naming the candidate whose chain failed.
    """
    candidates = [int(N) for N in candidates]
    if not candidates:
        raise ValueError("need at least one candidate")
    if len(set(candidates)) != len(candidates):
        raise ValueError("candidates must be distinct, got {}".format(
            candidates))
    seeds = spawn_seeds(seed, len(candidates))
    jobs = [(data, N, prior_cfg, tuning, schedule, child, chain_kwargs)
            for N, child in zip(candidates, seeds)]
    logger.info("Running %d chains for N in %s with %d worker(s)",
                len(jobs), candidates, threads)

    traces = []
    if threads <= 1:
        for job in jobs:
            try:
                traces.append(_run_candidate(job))
            except SplineHMMError as error:
                raise ChainError(job[1], error)
        return traces

    with ProcessPoolExecutor(max_workers=threads) as executor:
        futures = [executor.submit(_run_candidate, job) for job in jobs]
        for N, future in zip(candidates, futures):
            try:
                traces.append(future.result())
            except SplineHMMError as error:
                raise ChainError(N, error)
    return traces


def _check_aligned(traces):
    if not traces:
        raise ValueError("need at least one trace")
    counts = {trace.N: len(trace) for trace in traces}
    lengths = set(len(trace) for trace in traces)
    if len(lengths) != 1:
        raise DrawCountMismatchError(counts)
    if 0 in lengths:
        raise EmptyTraceError("traces hold no draws")


def draw_scores(traces, data=None, prior_cfg=None, model_prior=None):
    """Per-draw log scores, shape (len(traces), T).

    If `data` is given the log-likelihoods are recomputed, and if
    `prior_cfg` is given so are the log priors; otherwise the values stored
    in the traces are used.
    """
    _check_aligned(traces)
    if model_prior is None:
        model_prior = np.full(len(traces), 1.0 / len(traces))
    model_prior = np.asarray(model_prior, dtype=float)
    scores = []
    for trace, weight in zip(traces, model_prior):
        if data is not None:
            ll = np.array([log_likelihood(p, data) for p in trace])
        else:
            ll = trace.loglik
        if prior_cfg is not None:
            lp = np.array([log_prior(p, prior_cfg) for p in trace])
        else:
            lp = trace.logprior
        with np.errstate(divide='ignore'):
            scores.append(ll + lp + np.log(weight))
    return np.array(scores)


def posterior_model_probs(traces, data=None, model_prior=None,
                          prior_cfg=None):
    """Ensemble-average posterior probability of each candidate.

    Parameters
    ----------
    traces : list of Trace with equal numbers of draws
    data : Dataset, optional
        Recompute log-likelihoods instead of using the stored ones.
    model_prior : array of prior probabilities P(N), optional
        Uniform over the candidates by default.
    prior_cfg : PriorConfig, optional
        Recompute log priors instead of using the stored ones.

    Returns
    -------
    np.ndarray of probabilities summing to one.

    Raises
    ------
    DrawCountMismatchError if the traces differ in length.
    """
    scores = draw_scores(traces, data, prior_cfg, model_prior)
    log_probs = scores - logsumexp(scores, axis=0, keepdims=True)
    probs = np.exp(log_probs).mean(axis=1)
    return probs / probs.sum()


def dic(trace, data=None):
    """Deviance information criterion, lower is better.

    -(4/T) sum_i log f(y | theta_i) + 2 log f(y | theta_hat), where
    theta_hat is the draw maximising log-likelihood plus log prior.

    Raises
    ------
    EmptyTraceError
    """
    trace.check_not_empty()
    if data is not None:
        ll = np.array([log_likelihood(p, data) for p in trace])
    else:
        ll = trace.loglik
    best = int(np.argmax(ll + trace.logprior))
    return float(-4.0 * ll.mean() + 2.0 * ll[best])


def select(data, candidates, prior_cfg, tuning, schedule, seed=None,
           threads=1, model_prior=None, **chain_kwargs):
    """Runs `run_parallel` and scores the candidates.

    Returns
    -------
    SelectionResult
    """
    traces = run_parallel(data, candidates, prior_cfg, tuning, schedule,
                          seed=seed, threads=threads, **chain_kwargs)
    probs = posterior_model_probs(traces, model_prior=model_prior)
    dics = [dic(trace) for trace in traces]
    result = SelectionResult(candidates, probs, dics, traces)
    logger.info("Selection finished:\n%s", result.table().to_string())
    return result
