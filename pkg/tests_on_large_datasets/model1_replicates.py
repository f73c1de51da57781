from __future__ import print_function, division
import numpy as np
from scipy import stats

from splinehmm.simulate import simulate_model1
from splinehmm.prior import PriorConfig
from splinehmm.sampler import TuningParams, Schedule
from splinehmm.selection import select
from splinehmm.postprocessing import relabel, summarize, point_estimate
from splinehmm.hmm import viterbi
from splinehmm.metrics import kld, decoding_accuracy

"""
Ten replicates of the two-state skewed/bimodal series (n=800): selection
over N in 2..5, modal K, decoding accuracy and the KL divergence of each
estimated density from the truth.  A single-normal fit per state is
reported as the failure bar for the divergences.
"""

CANDIDATES = [2, 3, 4, 5]
REPLICATES = 10
schedule = Schedule(burn_in=50000, iters=50000, thin=10)

rows = []
for replicate in range(REPLICATES):
    truth = simulate_model1(n=800, seed=replicate)
    data = truth.to_dataset()
    result = select(data, CANDIDATES, PriorConfig(), TuningParams(),
                    schedule, seed=1000 + replicate, threads=4)
    trace = relabel(result.trace_for(2))
    summary = summarize(trace)
    path = viterbi(point_estimate(summary), data)
    divergences, baseline = [], []
    for i in range(2):
        reference = truth.density(i, summary.grid)
        divergences.append(kld(reference, summary.density_mean[i],
                               summary.grid))
        values = truth.obs[truth.states == i]
        normal = stats.norm.pdf(summary.grid, values.mean(), values.std())
        baseline.append(kld(reference, normal, summary.grid))
    rows.append((result.post_probs[0], summary.modal_K,
                 decoding_accuracy(path, truth.states), max(divergences),
                 max(baseline)))
    print("replicate {}: P(N=2)={:.3f} K={} accuracy={:.3f} KLD={:.4f}"
          " (normal {:.4f})".format(replicate, *rows[-1]))

rows = np.array(rows)
print("P(N=2) > 0.95 in {}/{}".format(np.sum(rows[:, 0] > 0.95), REPLICATES))
print("mean accuracy {:.3f}".format(rows[:, 2].mean()))
