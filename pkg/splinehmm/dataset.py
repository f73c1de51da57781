from __future__ import print_function, division
from warnings import warn

import numpy as np

from .consts import BOUNDS_PAD
from .exceptions import EmptyDataError, OutOfRangeError


def padded_bounds(values, pad=BOUNDS_PAD, lower=None):
    """Range of the finite `values` widened by `pad` times the range on each
    side.

    Parameters
    ----------
    values : array-like
    pad : float
    lower : float, optional
        Fixed lower bound (e.g. 0 for zero-inflated counts).

    Returns
    -------
    (a, b) : tuple of floats
    """
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if len(values) == 0:
        raise EmptyDataError("cannot derive bounds without observed values")
    lo, hi = values.min(), values.max()
    width = hi - lo
    if width == 0:
        width = max(abs(hi), 1.0)
    a = lo - pad * width if lower is None else lower
    b = hi + pad * width
    if not a < b:
        b = a + pad * width + 1.0
    return float(a), float(b)


class Dataset(object):
    """An ordered observation sequence with a missingness mask.

    Attributes
    ----------
    obs : np.ndarray of n floats
        Missing entries are stored as NaN.
    missing : np.ndarray of n bools
    bounds : (a, b)
        Support assumed for the emission densities.  Every observed value
        lies inside it.
    """

    def __init__(self, obs, missing=None, bounds=None, pad=BOUNDS_PAD):
        """
        Parameters
        ----------
        obs : array-like of floats; NaN marks a missing value
        missing : array-like of bools, optional
        bounds : (a, b), optional
            Derived from the observed range padded by `pad` if not given.
        pad : float

        Raises
        ------
        EmptyDataError if `obs` is empty.
        OutOfRangeError if an observed value lies outside `bounds`.
        """
        obs = np.array(obs, dtype=float).ravel()
        if len(obs) == 0:
            raise EmptyDataError("a dataset needs at least one time point")
        mask = ~np.isfinite(obs)
        if missing is not None:
            missing = np.asarray(missing, dtype=bool).ravel()
            if len(missing) != len(obs):
                raise ValueError("mask length {} does not match {} points"
                                 .format(len(missing), len(obs)))
            mask |= missing
        obs[mask] = np.nan
        self.obs = obs
        self.missing = mask
        if bounds is None:
            bounds = padded_bounds(obs[~mask], pad)
            warn("No bounds given; using the data range padded by {:.0%}:"
                 " [{:.6g}, {:.6g}].".format(pad, bounds[0], bounds[1]),
                 UserWarning)
        a, b = float(bounds[0]), float(bounds[1])
        if not a < b:
            raise OutOfRangeError(a, (a, b),
                                  "bounds must satisfy a < b, got ({}, {})"
                                  .format(a, b))
        observed = obs[~mask]
        outside = (observed < a) | (observed > b)
        if np.any(outside):
            raise OutOfRangeError(observed[outside][0], (a, b))
        self.bounds = (a, b)

    def __len__(self):
        return len(self.obs)

    def __repr__(self):
        return ("Dataset(n={}, missing={}, bounds=({:.6g}, {:.6g}))"
                .format(self.n, int(self.missing.sum()), *self.bounds))

    @property
    def n(self):
        return len(self.obs)

    @property
    def a(self):
        return self.bounds[0]

    @property
    def b(self):
        return self.bounds[1]

    @property
    def observed(self):
        """Non-missing values in time order."""
        return self.obs[~self.missing]

    @property
    def n_observed(self):
        return int((~self.missing).sum())

    def masked(self, mask, bounds=None):
        """Returns a copy with the points in `mask` also marked missing.

        Parameters
        ----------
        mask : array-like of n bools
        bounds : (a, b), optional
            Bounds for the copy; defaults to the current bounds.
        """
        mask = np.asarray(mask, dtype=bool)
        return Dataset(self.obs, self.missing | mask,
                       bounds=self.bounds if bounds is None else bounds)

    @classmethod
    def empty(cls, n, bounds):
        """A dataset of `n` missing points; its likelihood is identically
        one."""
        return cls(np.full(n, np.nan), bounds=bounds)
