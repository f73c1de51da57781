"""Two-level analysis of activity counts.

A zero-inflated main HMM is fitted to block-averaged counts.  Its decoded
path marks the lowest-activity state (state 0 after relabelling); rest
bouts are read off that path, and a conditional sub-HMM is fitted to the
high-resolution counts with every time point outside state 0 treated as
missing.
"""

from __future__ import print_function, division
import logging
from concurrent.futures import ProcessPoolExecutor
from warnings import warn

import numpy as np
import pandas as pd

from .dataset import Dataset, padded_bounds
from .hmm.engine import viterbi, smoothed_probs, cumulative_probs
from .postprocessing import relabel, point_estimate
from .preprocessing import (block_average, resample_series, expand_path,
                            period_factor)
from .prior import PriorConfig
from .results import SelectionResult
from .sampler.chain import run_chain
from .sampler.trace import Trace
from .sampler.tuning import TuningParams, Schedule
from .selection import select
from .utils import spawn_seeds
from .consts import BOUNDS_PAD
from .exceptions import EmptyConditioningError, ChainError, SplineHMMError

logger = logging.getLogger(__name__)

V_MODES = ('point', 'mixture')


class PipelineConfig(object):
    """Settings of the two-level pipeline.

    Attributes
    ----------
    main_period, sub_period : pandas offset strings
        Resolution of the main and the sub fit.
    min_dwell_minutes : float
        Minimum time spent in (or out of) the rest state for a bout to
        start (or end).
    sub_states : int
    v_mode : {'point', 'mixture'}
        Condition on the path decoded from the posterior point estimate,
        or pool sub-chains over `v_draws` paths decoded from posterior
        draws.
    v_draws : int
    zero_inflated : bool
        Zero-inflated emissions for both levels.
    restrict_to_bouts : bool
        Condition only on rest-state points inside bouts.
    """

    def __init__(self, main_period='5min', sub_period='1min',
                 min_dwell_minutes=30, sub_states=2, v_mode='point',
                 v_draws=10, zero_inflated=True, restrict_to_bouts=False):
        self.main_period = main_period
        self.sub_period = sub_period
        self.min_dwell_minutes = min_dwell_minutes
        self.sub_states = sub_states
        self.v_mode = v_mode
        self.v_draws = v_draws
        self.zero_inflated = zero_inflated
        self.restrict_to_bouts = restrict_to_bouts

    def check(self):
        if self.v_mode not in V_MODES:
            raise ValueError("v_mode must be one of {}, got '{}'".format(
                V_MODES, self.v_mode))
        if self.v_draws < 1 or self.sub_states < 1:
            raise ValueError("v_draws and sub_states must be positive")
        if self.min_dwell_minutes < 0:
            raise ValueError("min_dwell_minutes must be non-negative")
        period_factor(self.main_period, self.sub_period)
        return self

    @property
    def factor(self):
        return period_factor(self.main_period, self.sub_period)

    @property
    def min_dwell(self):
        """Minimum dwell in sub-resolution samples."""
        return minutes_to_samples(self.min_dwell_minutes, self.sub_period)

    def to_dict(self):
        return dict(self.__dict__)


class BoutSegmentation(object):
    """Rest bouts found on a decoded state path.

    Attributes
    ----------
    bouts : list of (start, end)
        Inclusive index ranges, ordered and non-overlapping.
    min_dwell : int
    state : int
        The rest state.
    n : int
        Length of the path.
    """

    def __init__(self, bouts, min_dwell, state=0, n=None):
        self.bouts = [(int(start), int(end)) for start, end in bouts]
        self.min_dwell = int(min_dwell)
        self.state = int(state)
        self.n = n

    def __len__(self):
        return len(self.bouts)

    def __iter__(self):
        return iter(self.bouts)

    def __repr__(self):
        return "BoutSegmentation({} bouts, min_dwell={})".format(
            len(self), self.min_dwell)

    @property
    def durations(self):
        return np.array([end - start + 1 for start, end in self.bouts],
                        dtype=int)

    def mask(self, n=None):
        """Boolean array, True inside a bout."""
        n = self.n if n is None else n
        inside = np.zeros(n, dtype=bool)
        for start, end in self.bouts:
            inside[start:end + 1] = True
        return inside

    def to_frame(self, index=None):
        """pd.DataFrame with start, end and duration per bout.

        If `index` (e.g. the timestamps of the path) is given, start and
        end are looked up in it and duration is a time span.
        """
        starts = np.array([start for start, _ in self.bouts], dtype=int)
        ends = np.array([end for _, end in self.bouts], dtype=int)
        if index is None:
            return pd.DataFrame({'start': starts, 'end': ends,
                                 'duration': self.durations},
                                columns=['start', 'end', 'duration'])
        index = pd.Index(index)
        start_at, end_at = index[starts], index[ends]
        return pd.DataFrame({'start': start_at, 'end': end_at,
                             'duration': self.durations},
                            columns=['start', 'end', 'duration'])


def _runs(flags):
    """Start, length and value of every run of equal values."""
    flags = np.asarray(flags, dtype=bool)
    if len(flags) == 0:
        return np.zeros(0, int), np.zeros(0, int), np.zeros(0, bool)
    change = np.flatnonzero(flags[1:] != flags[:-1]) + 1
    starts = np.concatenate([[0], change])
    lengths = np.diff(np.concatenate([starts, [len(flags)]]))
    return starts, lengths, flags[starts]


def extract_bouts(path, min_dwell, state=0):
    """Rest bouts on a decoded path.

    A bout starts at the first entry into `state` that lasts at least
    `min_dwell` samples and ends just before the first later departure
    that lasts at least `min_dwell` samples.  Shorter interruptions are
    absorbed into the bout.  A bout still open at the end of the path ends
    at its last point in `state`.

    Returns
    -------
    BoutSegmentation, possibly empty.
    """
    path = np.asarray(path)
    min_dwell = max(int(min_dwell), 1)
    inside = path == state
    starts, lengths, values = _runs(inside)
    bouts = []
    i, n_runs = 0, len(starts)
    while i < n_runs:
        if not (values[i] and lengths[i] >= min_dwell):
            i += 1
            continue
        onset = starts[i]
        j = i + 1
        while j < n_runs and (values[j] or lengths[j] < min_dwell):
            j += 1
        if j < n_runs:
            bouts.append((onset, starts[j] - 1))
        else:
            bouts.append((onset, np.flatnonzero(inside)[-1]))
        i = j + 1
    return BoutSegmentation(bouts, min_dwell, state, len(path))


def minutes_to_samples(minutes, period):
    """Number of samples of length `period` covering `minutes`."""
    samples = pd.Timedelta(minutes=minutes) / pd.Timedelta(period)
    return int(np.ceil(samples - 1e-9))


def _main_trace(main):
    if isinstance(main, SelectionResult):
        return main.trace_for(main.best_by_probability())
    return main


def fit_main(data, N, prior_cfg=None, tuning=None, schedule=None, seed=None,
             threads=1, zero_inflated=True, **chain_kwargs):
    """Fits the main HMM.

    Parameters
    ----------
    data : Dataset of block-averaged counts
    N : int or sequence of ints
        A single number of states runs one chain; a sequence runs
        selection over the candidates.

    Returns
    -------
    Trace or SelectionResult
    """
    prior_cfg = prior_cfg or PriorConfig()
    tuning = tuning or TuningParams()
    schedule = schedule or Schedule()
    if np.isscalar(N):
        logger.info("Fitting the main HMM with N=%d", N)
        return run_chain(data, int(N), prior_cfg, tuning, schedule,
                         seed=seed, zero_inflated=zero_inflated,
                         **chain_kwargs)
    return select(data, list(N), prior_cfg, tuning, schedule, seed=seed,
                  threads=threads, zero_inflated=zero_inflated,
                  **chain_kwargs)


def decoded_paths(main_trace, main_data, v_mode='point', v_draws=10):
    """Main-level paths to condition on.

    'point' decodes with the posterior point estimate; 'mixture' decodes
    with `v_draws` evenly spaced relabelled draws at the modal K.

    Returns
    -------
    list of np.ndarrays of main-resolution states
    """
    if v_mode not in V_MODES:
        raise ValueError("v_mode must be one of {}, got '{}'".format(
            V_MODES, v_mode))
    main_trace = relabel(_main_trace(main_trace))
    if v_mode == 'point':
        return [viterbi(point_estimate(main_trace), main_data)]
    modal = main_trace.at_K(main_trace.modal_K())
    picks = np.unique(np.linspace(0, len(modal) - 1, v_draws).astype(int))
    return [viterbi(modal[i], main_data) for i in picks]


def sub_bounds(values, pad=BOUNDS_PAD):
    """[0, max positive value * (1 + pad)]; [0, 1] without positive
    values."""
    values = np.asarray(values, dtype=float)
    positive = values[np.isfinite(values) & (values > 0)]
    if len(positive) == 0:
        return 0.0, 1.0
    return 0.0, float(positive.max() * (1 + pad))


def conditioning_bounds(data_highres, paths, factor, state=0, pad=BOUNDS_PAD):
    """`sub_bounds` of every value decoded to `state` by any of `paths`."""
    pooled = np.zeros(data_highres.n, dtype=bool)
    for path in paths:
        pooled |= expand_path(path, factor, data_highres.n) == state
    return sub_bounds(data_highres.obs[pooled], pad)


def condition_on_paths(data_highres, paths, factor, min_dwell=None,
                       restrict_to_bouts=False, state=0, pad=BOUNDS_PAD,
                       bounds=None):
    """High-resolution datasets with all points outside `state` missing.

    Parameters
    ----------
    data_highres : Dataset
    paths : list of main-resolution state paths
    factor : int
        High-resolution samples per main sample.
    min_dwell : int, optional
        In high-resolution samples; needed with `restrict_to_bouts`.
    bounds : (a, b), optional
        Defaults to `conditioning_bounds` of `paths`.

    Returns
    -------
    list of Dataset sharing the same bounds.

    Raises
    ------
    EmptyConditioningError if a path leaves nothing observed.
    """
    n = data_highres.n
    keep = []
    for path in paths:
        fine = expand_path(path, factor, n)
        conditioned = fine == state
        if restrict_to_bouts:
            if min_dwell is None:
                raise ValueError("restrict_to_bouts needs min_dwell")
            conditioned &= extract_bouts(fine, min_dwell, state).mask(n)
        conditioned &= ~data_highres.missing
        if not conditioned.any():
            raise EmptyConditioningError(
                "no observed point is decoded to state {}".format(state))
        keep.append(conditioned)
    if bounds is None:
        bounds = conditioning_bounds(data_highres, paths, factor, state, pad)
    return [data_highres.masked(~conditioned, bounds=bounds)
            for conditioned in keep]


def _run_job(args):
    data, N, prior_cfg, tuning, schedule, seed, chain_kwargs = args
    return run_chain(data, N, prior_cfg, tuning, schedule, seed=seed,
                     **chain_kwargs)


def fit_sub(data_highres, main_data, main_trace, factor, sub_N=2,
            v_mode='point', v_draws=10, min_dwell=None,
            restrict_to_bouts=False, prior_cfg=None, tuning=None,
            schedule=None, seed=None, threads=1, zero_inflated=True,
            pad=BOUNDS_PAD, **chain_kwargs):
    """Conditional sub-HMM on the rest-state points.

    Parameters
    ----------
    data_highres : Dataset at the sub resolution
    main_data : Dataset the main HMM was fitted to
    main_trace : Trace or SelectionResult of the main fit
    factor : int
    sub_N : int
    v_mode, v_draws : see `decoded_paths`
    threads : int
        Worker processes for the sub-chains in mixture mode.

    Returns
    -------
    Trace; in mixture mode the pooled draws of one sub-chain per path.

    Raises
    ------
    EmptyConditioningError
    ChainError if a sub-chain fails.
    """
    prior_cfg = prior_cfg or PriorConfig()
    tuning = tuning or TuningParams()
    schedule = schedule or Schedule()
    paths = decoded_paths(main_trace, main_data, v_mode, v_draws)
    if v_mode == 'point':
        warn("The sub-HMM is conditioned on the path decoded from the"
             " posterior point estimate; uncertainty in that path is"
             " ignored.", UserWarning)
    # The point-estimate path is included so that its report fits inside
    # the sub-model support.
    bounds = conditioning_bounds(
        data_highres, paths + decoded_paths(main_trace, main_data, 'point'),
        factor, pad=pad)
    datasets = condition_on_paths(data_highres, paths, factor, min_dwell,
                                  restrict_to_bouts, pad=pad, bounds=bounds)
    logger.info("Fitting the sub-HMM with N=%d on %d conditioning path(s);"
                " %d of %d points conditioned", sub_N, len(datasets),
                datasets[0].n_observed, data_highres.n)
    chain_kwargs['zero_inflated'] = zero_inflated
    jobs = [(data, sub_N, prior_cfg, tuning, schedule, child, chain_kwargs)
            for data, child in zip(datasets, spawn_seeds(seed,
                                                         len(datasets)))]
    traces = []
    try:
        if threads <= 1 or len(jobs) == 1:
            traces = [_run_job(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=threads) as executor:
                traces = list(executor.map(_run_job, jobs))
    except SplineHMMError as error:
        raise ChainError(sub_N, error)
    if len(traces) == 1:
        return traces[0]
    return Trace.concatenate(traces)


def substate_report(sub_trace, sub_data, bouts=None):
    """Decoded sub-states of the conditioned points.

    Parameters
    ----------
    sub_trace : Trace of the sub fit
    sub_data : Dataset the sub fit conditioned on
    bouts : BoutSegmentation at the sub resolution, optional

    Returns
    -------
    states : pd.DataFrame
        One row per time point: 'conditioned', 'substate' (-1 where not
        conditioned), 'prob_i' and 'cumprob_i' per sub-state.
    bout_table : pd.DataFrame or None
        start, end, duration and the fraction of conditioned points in
        each sub-state, per bout.
    """
    params = point_estimate(relabel(sub_trace))
    conditioned = ~sub_data.missing
    path = np.where(conditioned, viterbi(params, sub_data), -1)
    smoothed = smoothed_probs(params, sub_data)
    cumulative = cumulative_probs(smoothed)
    columns = {'conditioned': conditioned, 'substate': path}
    names = ['conditioned', 'substate']
    for i in range(params.N):
        columns['prob_{}'.format(i)] = smoothed[:, i]
        columns['cumprob_{}'.format(i)] = cumulative[:, i]
        names += ['prob_{}'.format(i), 'cumprob_{}'.format(i)]
    states = pd.DataFrame(columns, columns=names)

    if bouts is None:
        return states, None
    table = bouts.to_frame()
    for i in range(params.N):
        fractions = []
        for start, end in bouts:
            inside = path[start:end + 1]
            inside = inside[inside >= 0]
            fractions.append(np.mean(inside == i) if len(inside) else np.nan)
        table['frac_{}'.format(i)] = fractions
    return states, table


class PipelineResult(object):
    """Everything `run_pipeline` produces."""

    def __init__(self, main, main_data, main_path, bouts, sub_trace,
                 sub_data, substates, bout_table, index):
        self.main = main
        self.main_data = main_data
        self.main_path = main_path
        self.bouts = bouts
        self.sub_trace = sub_trace
        self.sub_data = sub_data
        self.substates = substates
        self.bout_table = bout_table
        self.index = index

    @property
    def main_trace(self):
        return _main_trace(self.main)

    def bout_frame(self):
        """Bout table with timestamps."""
        table = self.bout_table.copy()
        timed = self.bouts.to_frame(self.index)
        table['start'] = timed['start'].values
        table['end'] = timed['end'].values
        return table

    def substate_frame(self):
        frame = self.substates.copy()
        frame.insert(0, 'timestamp', self.index)
        return frame


def run_pipeline(frame, main_states, config=None, prior_cfg=None,
                 tuning=None, schedule=None, sub_schedule=None, seed=None,
                 threads=1):
    """Main fit, bout extraction and conditional sub fit end to end.

    Parameters
    ----------
    frame : pd.DataFrame with 'timestamp' and 'count' columns
    main_states : int or sequence of candidate ints
    config : PipelineConfig
    sub_schedule : Schedule for the sub fit; defaults to `schedule`

    Returns
    -------
    PipelineResult
    """
    config = (config or PipelineConfig()).check()
    prior_cfg = prior_cfg or PriorConfig()
    schedule = schedule or Schedule()
    main_seed, sub_seed = spawn_seeds(seed, 2)

    series = pd.Series(frame['count'].values.astype(float),
                       index=pd.DatetimeIndex(frame['timestamp']))
    fine = resample_series(series, config.sub_period)
    factor = config.factor
    coarse = block_average(fine.values, factor)
    logger.info("%d samples at %s, %d at %s", len(fine), config.sub_period,
                len(coarse), config.main_period)

    lower = 0.0 if config.zero_inflated else None
    main_data = Dataset(coarse, bounds=padded_bounds(coarse, prior_cfg.pad,
                                                     lower=lower))
    main = fit_main(main_data, main_states, prior_cfg, tuning, schedule,
                    seed=main_seed, threads=threads,
                    zero_inflated=config.zero_inflated)

    main_path = decoded_paths(main, main_data, 'point')[0]
    fine_path = expand_path(main_path, factor, len(fine))
    bouts = extract_bouts(fine_path, config.min_dwell)
    logger.info("Found %d rest bouts", len(bouts))

    data_highres = Dataset(fine.values, bounds=padded_bounds(
        fine.values, prior_cfg.pad, lower=lower))
    sub_trace = fit_sub(data_highres, main_data, main, factor,
                        sub_N=config.sub_states, v_mode=config.v_mode,
                        v_draws=config.v_draws, min_dwell=config.min_dwell,
                        restrict_to_bouts=config.restrict_to_bouts,
                        prior_cfg=prior_cfg, tuning=tuning,
                        schedule=sub_schedule or schedule, seed=sub_seed,
                        threads=threads, zero_inflated=config.zero_inflated,
                        pad=prior_cfg.pad)
    sub_knots = sub_trace[0].knots
    sub_data = condition_on_paths(data_highres, [main_path], factor,
                                  config.min_dwell,
                                  config.restrict_to_bouts,
                                  bounds=(sub_knots.a, sub_knots.b))[0]
    substates, bout_table = substate_report(sub_trace, sub_data, bouts)
    return PipelineResult(main, main_data, main_path, bouts, sub_trace,
                          sub_data, substates, bout_table, fine.index)
