from __future__ import print_function, division
import numpy as np
from scipy import stats

from splinehmm.dataset import Dataset
from splinehmm.prior import PriorConfig, draw_from_prior
from splinehmm.sampler import TuningParams, Schedule, run_chain

"""
With no observations the sampler must reproduce the prior.  Checks the
marginals of K, the first interior knot given K, zeta and one transition
row against their closed forms.  Takes a few minutes.
"""

K_MAX = 8
SWEEPS = 1000000
THIN = 50

cfg = PriorConfig(k_max=K_MAX, bounds=(0, 1))
data = Dataset.empty(1, (0, 1))
trace = run_chain(data, 2, cfg, TuningParams(),
                  Schedule(burn_in=10000, iters=SWEEPS, thin=THIN), seed=0,
                  initial=draw_from_prior(2, cfg, seed=1), progress=True)
print(trace.acceptance_rates().to_string())

K = trace.K_series
observed = np.array([np.sum(K == k) for k in range(2, K_MAX + 1)])
chi2 = stats.chisquare(observed)
print("K frequencies", observed / observed.sum(), "p =", chi2.pvalue)

for k in (2, 4):
    sub = trace.at_K(k)
    first = np.array([params.knots.interior[0] for params in sub])
    # minimum of k uniforms is Beta(1, k)
    ks = stats.kstest(first, stats.beta(1, k).cdf)
    print("first knot given K={}: p = {}".format(k, ks.pvalue))

zeta = np.array([params.zeta for params in trace])
print("zeta: p =", stats.kstest(zeta, stats.gamma(1.0).cdf).pvalue)

gamma = np.array([params.gamma[0, 0] for params in trace])
print("Gamma[0, 0]: p =",
      stats.kstest(gamma, stats.beta(cfg.eps1, cfg.eps1).cdf).pvalue)
