from __future__ import print_function, division
from collections import OrderedDict
import datetime

import numpy as np
from scipy import linalg

# Python 2/3 compatibility
from six import iteritems


def show_versions():
    """Prints versions of various dependencies"""
    output = OrderedDict()
    output["Date"] = str(datetime.datetime.now())
    import sys
    import platform
    import importlib
    output["Platform"] = str(platform.platform())
    system_information = sys.version_info
    output["System version"] = "{}.{}".format(system_information.major,
                                              system_information.minor)

    PACKAGES = [
        "splinehmm", "numpy", "scipy", "pandas", "sklearn", "numba", "yaml",
        "tqdm"]
    for package_name in PACKAGES:
        key = package_name + " version"
        try:
            module = importlib.import_module(package_name)
        except ImportError:
            output[key] = "Not found"
        else:
            output[key] = getattr(module, '__version__', 'unknown')

    for k, v in iteritems(output):
        print("{}: {}".format(k, v))


def as_generator(seed):
    """Returns a numpy Generator for `seed`.

    Parameters
    ----------
    seed : None, int, np.random.SeedSequence or np.random.Generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(seed, n):
    """Derives `n` independent child seeds from a master seed.

    Returns
    -------
    list of np.random.SeedSequence
    """
    if isinstance(seed, np.random.SeedSequence):
        return seed.spawn(n)
    return np.random.SeedSequence(seed).spawn(n)


def normalise_rows(matrix):
    matrix = np.asarray(matrix, dtype=float)
    return matrix / matrix.sum(axis=-1, keepdims=True)


def stationary_distribution(gamma):
    """Stationary distribution of a row-stochastic transition matrix.

    Computed as the left eigenvector of `gamma` for the eigenvalue
    closest to one, normalised to sum to one.

    Parameters
    ----------
    gamma : (N, N) array

    Returns
    -------
    pi : (N,) array
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape == (1, 1):
        return np.ones(1)
    eigenvalues, left = linalg.eig(gamma, left=True, right=False)
    index = np.argmin(np.abs(eigenvalues - 1.0))
    pi = np.abs(np.real(left[:, index]))
    return pi / pi.sum()

