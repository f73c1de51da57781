"""Moving between the main (coarse) and sub (fine) time resolutions."""

from __future__ import print_function, division
from warnings import warn

import numpy as np
import pandas as pd


def period_factor(main_period, sub_period):
    """Number of fine samples per coarse sample, e.g. ('5min', '1min') -> 5.

    Raises
    ------
    ValueError if `main_period` is not a whole multiple of `sub_period`.
    """
    main = pd.Timedelta(main_period)
    sub = pd.Timedelta(sub_period)
    if sub <= pd.Timedelta(0) or main < sub:
        raise ValueError("need main_period >= sub_period > 0, got {} and {}"
                         .format(main_period, sub_period))
    factor, remainder = divmod(main, sub)
    if remainder != pd.Timedelta(0):
        raise ValueError("{} is not a multiple of {}".format(main_period,
                                                             sub_period))
    return int(factor)


def block_average(values, factor):
    """Means of consecutive blocks of `factor` values.

    Missing values (NaN) are ignored; a block with no observed value is
    NaN.  A trailing partial block is averaged over what it holds.

    Returns
    -------
    np.ndarray of ceil(len(values) / factor) floats
    """
    values = np.asarray(values, dtype=float)
    factor = int(factor)
    if factor < 1:
        raise ValueError("factor must be positive, got {}".format(factor))
    n_blocks = -(-len(values) // factor)
    padded = np.full(n_blocks * factor, np.nan)
    padded[:len(values)] = values
    blocks = padded.reshape(n_blocks, factor)
    observed = np.isfinite(blocks)
    counts = observed.sum(axis=1)
    sums = np.where(observed, blocks, 0.0).sum(axis=1)
    means = np.full(n_blocks, np.nan)
    np.divide(sums, counts, out=means, where=counts > 0)
    return means


def resample_series(series, period):
    """Block means of a time-indexed pd.Series over `period` bins.

    Bins are anchored at the first timestamp so that they line up with
    `block_average` on regularly sampled data.
    """
    if not isinstance(series.index, pd.DatetimeIndex):
        raise TypeError("resample_series needs a DatetimeIndex")
    if not series.index.is_monotonic_increasing:
        warn("Timestamps are not sorted; sorting them.", UserWarning)
        series = series.sort_index()
    return series.resample(period, origin='start').mean()


def expand_path(path, factor, n):
    """Repeats every entry of a coarse state path `factor` times and trims
    the result to the `n` fine time points."""
    path = np.asarray(path)
    if len(path) * factor < n:
        raise ValueError("path of {} coarse points covers only {} of {} fine"
                         " points".format(len(path), len(path) * factor, n))
    return np.repeat(path, factor)[:n]
