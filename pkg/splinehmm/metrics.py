'''Metrics comparing fitted models against ground truth.

Notation
--------

:math:`p, q` - densities evaluated on a common grid :math:`y_1 < \\dots < y_G`.

:math:`x_t` - true state at time :math:`t`.

:math:`\\hat{x}_t` - decoded state at time :math:`t`.

Functions
---------

'''

from __future__ import print_function, division

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import linear_sum_assignment
from scipy.signal import find_peaks
from scipy.special import xlogy

from .consts import KLD_FLOOR


def kld(p, q, grid, normalize=False):
    """Kullback-Leibler divergence of `q` from `p` on a grid.

    .. math::
        \\int p(y) \\log \\frac{p(y)}{\\max(q(y), 10^{-12})} dy

    computed with the trapezoid rule.

    Parameters
    ----------
    p, q : arrays of density values on `grid`
    grid : increasing array
    normalize : bool
        Rescale both curves to integrate to one on the grid first.  Off by
        default, so the raw integral above is returned.

    Returns
    -------
    float
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if normalize:
        p = p / trapezoid(p, grid)
        q = q / trapezoid(q, grid)
    integrand = xlogy(p, p) - xlogy(p, np.maximum(q, KLD_FLOOR))
    return float(trapezoid(integrand, grid))


def decoding_accuracy(decoded, truth):
    """Fraction of time points whose decoded state equals the true one,
    under the best one-to-one relabelling of the decoded states.

    .. math::
        \\max_{\\sigma} \\frac{1}{n} \\sum_t 1\\{\\sigma(\\hat{x}_t) = x_t\\}

    The best relabelling is found as a linear assignment on the confusion
    matrix, which gives the same optimum as trying all permutations.

    Parameters
    ----------
    decoded, truth : integer arrays of equal length

    Returns
    -------
    float in [0, 1]
    """
    decoded = np.asarray(decoded, dtype=int)
    truth = np.asarray(truth, dtype=int)
    if decoded.shape != truth.shape:
        raise ValueError("paths have different lengths: {} and {}".format(
            len(decoded), len(truth)))
    if len(truth) == 0:
        return np.nan
    n_labels = max(decoded.max(), truth.max()) + 1
    confusion = np.zeros((n_labels, n_labels))
    np.add.at(confusion, (decoded, truth), 1)
    rows, cols = linear_sum_assignment(confusion, maximize=True)
    return float(confusion[rows, cols].sum() / len(truth))


def count_modes(curve, threshold=0.01):
    """Number of local maxima of `curve` higher than `threshold` times its
    maximum."""
    curve = np.asarray(curve, dtype=float)
    if len(curve) == 0 or not np.any(curve > 0):
        return 0
    peaks, _ = find_peaks(curve, height=threshold * curve.max())
    return len(peaks)
