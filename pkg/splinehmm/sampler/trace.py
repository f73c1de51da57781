from __future__ import print_function, division

import numpy as np
import pandas as pd

from ..hmm.params import HmmParams
from ..exceptions import EmptyTraceError


class Trace(object):
    """Sampled parameter states of one chain.

    Draw 0 is the state at the end of burn-in; after it comes every
    `thin`-th post-burn-in sweep.

    Attributes
    ----------
    N : int
    draws : list of HmmParams
    sweeps : list of ints
        Sweep count at which each draw was recorded.
    loglik, logprior : np.ndarray
    acceptance : dict
        move name -> (proposed, accepted).
    tuning : dict
        Proposal scales at the end of the run.
    """

    def __init__(self, N, draws=None, sweeps=None, loglik=None,
                 logprior=None, acceptance=None, tuning=None):
        self.N = int(N)
        self.draws = list(draws) if draws is not None else []
        self.sweeps = list(sweeps) if sweeps is not None else []
        self._loglik = list(loglik) if loglik is not None else []
        self._logprior = list(logprior) if logprior is not None else []
        self.acceptance = dict(acceptance or {})
        self.tuning = dict(tuning or {})
        if not (len(self.draws) == len(self.sweeps) == len(self._loglik) ==
                len(self._logprior)):
            raise ValueError("draws, sweeps and log densities must have the"
                             " same length")

    def __len__(self):
        return len(self.draws)

    def __getitem__(self, i):
        return self.draws[i]

    def __iter__(self):
        return iter(self.draws)

    def __repr__(self):
        return "Trace(N={}, draws={})".format(self.N, len(self))

    def append(self, sweep, params, loglik, logprior):
        self.draws.append(params)
        self.sweeps.append(int(sweep))
        self._loglik.append(float(loglik))
        self._logprior.append(float(logprior))

    @property
    def loglik(self):
        return np.array(self._loglik)

    @property
    def logprior(self):
        return np.array(self._logprior)

    @property
    def K_series(self):
        return np.array([params.K for params in self.draws], dtype=int)

    @property
    def zero_inflated(self):
        return bool(self.draws) and self.draws[0].zero_inflated

    def check_not_empty(self):
        if len(self) == 0:
            raise EmptyTraceError("trace holds no draws")

    def K_frequencies(self):
        """Relative frequency of each K, as a pd.Series indexed by K."""
        self.check_not_empty()
        return pd.Series(self.K_series).value_counts(
            normalize=True).sort_index()

    def modal_K(self):
        """Most frequent K; ties go to the smaller K."""
        freq = self.K_frequencies()
        return int(freq.index[np.argmax(freq.values)])

    def subset(self, indices):
        indices = list(indices)
        return Trace(self.N, [self.draws[i] for i in indices],
                     [self.sweeps[i] for i in indices],
                     [self._loglik[i] for i in indices],
                     [self._logprior[i] for i in indices],
                     self.acceptance, self.tuning)

    def at_K(self, K):
        """Draws with exactly K interior knots."""
        return self.subset(np.flatnonzero(self.K_series == K))

    def with_draws(self, draws):
        """Same bookkeeping with replaced (e.g. relabelled) draws."""
        return Trace(self.N, draws, self.sweeps, self._loglik,
                     self._logprior, self.acceptance, self.tuning)

    def acceptance_rates(self):
        """pd.DataFrame with proposed, accepted, rejected and rate per
        move."""
        rows = []
        for move, (proposed, accepted) in self.acceptance.items():
            rows.append({'move': move, 'proposed': proposed,
                         'accepted': accepted,
                         'rejected': proposed - accepted,
                         'rate': accepted / proposed if proposed else np.nan})
        return pd.DataFrame(rows, columns=['move', 'proposed', 'accepted',
                                           'rejected', 'rate'])

    @classmethod
    def concatenate(cls, traces):
        """Pools the draws of several traces of the same N."""
        traces = list(traces)
        if not traces:
            raise EmptyTraceError("nothing to concatenate")
        N = traces[0].N
        if any(trace.N != N for trace in traces):
            raise ValueError("cannot pool traces with different N")
        acceptance = {}
        for trace in traces:
            for move, (proposed, accepted) in trace.acceptance.items():
                p, a = acceptance.get(move, (0, 0))
                acceptance[move] = (p + proposed, a + accepted)
        return cls(N,
                   [d for trace in traces for d in trace.draws],
                   [s for trace in traces for s in trace.sweeps],
                   [v for trace in traces for v in trace._loglik],
                   [v for trace in traces for v in trace._logprior],
                   acceptance, traces[0].tuning)

    def to_records(self):
        """One dict per draw, as written to the trace files."""
        records = []
        for sweep, params, ll, lp in zip(self.sweeps, self.draws,
                                         self._loglik, self._logprior):
            record = {'sweep': sweep}
            record.update(params.to_dict())
            record['loglik'] = ll
            record['logprior'] = lp
            records.append(record)
        return records

    @classmethod
    def from_records(cls, records, acceptance=None, tuning=None):
        records = list(records)
        if not records:
            raise EmptyTraceError("no draws to read")
        draws = [HmmParams.from_dict(record) for record in records]
        return cls(draws[0].N, draws,
                   [int(record['sweep']) for record in records],
                   [float(record['loglik']) for record in records],
                   [float(record['logprior']) for record in records],
                   acceptance, tuning)
