from __future__ import print_function, division

import numpy as np
import pandas as pd


class SelectionResult(object):
    """Outcome of choosing the number of states.

    Attributes
    ----------
    candidates : list of ints
    post_probs : np.ndarray
        Posterior probability of each candidate; sums to one.
    dic : np.ndarray
        DIC of each candidate.
    traces : list of Trace
    """

    def __init__(self, candidates, post_probs, dic, traces=None):
        self.candidates = [int(N) for N in candidates]
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError("candidates must be distinct")
        self.post_probs = np.asarray(post_probs, dtype=float)
        self.dic = np.asarray(dic, dtype=float)
        self.traces = list(traces) if traces is not None else []

    def best_by_probability(self):
        return self.candidates[int(np.argmax(self.post_probs))]

    def best_by_dic(self):
        return self.candidates[int(np.argmin(self.dic))]

    def trace_for(self, N):
        return self.traces[self.candidates.index(N)]

    def table(self):
        """Human-readable pd.DataFrame indexed by N."""
        return pd.DataFrame({'post_prob': self.post_probs, 'dic': self.dic},
                            index=pd.Index(self.candidates, name='N'))

    def to_dict(self):
        return {
            'candidates': self.candidates,
            'post_probs': self.post_probs.tolist(),
            'dic': self.dic.tolist(),
            'best_by_probability': self.best_by_probability(),
            'best_by_dic': self.best_by_dic(),
            'draws': [len(trace) for trace in self.traces],
        }


class Summary(object):
    """Posterior summary of one trace conditioned on its modal K.

    Attributes
    ----------
    K_frequencies : pd.Series
        Relative frequency of each K over the whole trace.
    modal_K : int
    modal_prob : float
    n_draws : int
        Draws with K equal to `modal_K`.
    mean, sd : dict
        Keys 'knots', 'coeffs', 'delta', 'gamma', 'zeta' and, for
        zero-inflated models, 'w'.  Values are np.ndarrays (floats for
        zeta).
    bounds : (a, b)
    grid : np.ndarray
    density_mean, density_lo, density_hi : (N, len(grid)) np.ndarray
        Pointwise posterior mean and central band of each emission density.
    stationary : (N,) np.ndarray
        Stationary distribution of the posterior-mean transition matrix.
    band : (lo, hi) percentiles
    kld : dict, optional
        State index -> KL divergence to a reference density.
    """

    def __init__(self, K_frequencies, modal_K, mean, sd, bounds, grid,
                 density_mean, density_lo, density_hi, stationary,
                 n_draws, band=(5, 95)):
        self.K_frequencies = K_frequencies
        self.modal_K = int(modal_K)
        self.modal_prob = float(K_frequencies.loc[modal_K])
        self.mean = mean
        self.sd = sd
        self.bounds = tuple(bounds)
        self.grid = np.asarray(grid)
        self.density_mean = density_mean
        self.density_lo = density_lo
        self.density_hi = density_hi
        self.stationary = np.asarray(stationary)
        self.n_draws = int(n_draws)
        self.band = tuple(band)
        self.kld = {}

    @property
    def N(self):
        return len(self.stationary)

    @property
    def weighted_densities(self):
        """Posterior-mean densities weighted by the stationary
        distribution, shape (N, len(grid))."""
        return self.stationary[:, None] * self.density_mean

    def density_frame(self):
        """Plot-ready pd.DataFrame of the density curves on the grid."""
        columns = {'grid': self.grid}
        weighted = self.weighted_densities
        for i in range(self.N):
            label = 'state{}'.format(i)
            columns[label + '_mean'] = self.density_mean[i]
            columns[label + '_lo'] = self.density_lo[i]
            columns[label + '_hi'] = self.density_hi[i]
            columns[label + '_weighted'] = weighted[i]
        columns['mixture'] = weighted.sum(axis=0)
        return pd.DataFrame(columns)

    def to_dict(self):
        def plain(value):
            if isinstance(value, np.ndarray):
                return value.tolist()
            return value
        return {
            'modal_K': self.modal_K,
            'modal_prob': self.modal_prob,
            'n_draws': self.n_draws,
            'K_frequencies': {int(k): float(v)
                              for k, v in self.K_frequencies.items()},
            'bounds': list(self.bounds),
            'mean': {k: plain(v) for k, v in self.mean.items()},
            'sd': {k: plain(v) for k, v in self.sd.items()},
            'stationary': self.stationary.tolist(),
            'band': list(self.band),
            'kld': {str(k): float(v) for k, v in self.kld.items()},
        }
