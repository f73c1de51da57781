from __future__ import print_function, division
import numpy as np

from splinehmm.simulate import simulate_model3
from splinehmm.prior import PriorConfig
from splinehmm.sampler import TuningParams, Schedule, run_chain
from splinehmm.postprocessing import relabel, summarize
from splinehmm.metrics import count_modes

"""
Two overlapping trimodal states.  Chains start from two identical states
anchored at zero; reports the number of modes of each posterior-mean
density and the posterior mean of the switching probability.
"""

schedule = Schedule(burn_in=50000, iters=50000, thin=10)
# Both states start with their mean level close to zero.
anchors = [0.0, 0.0]


def replicate(n, seed):
    truth = simulate_model3(n=n, rho=0.05, seed=seed)
    trace = relabel(run_chain(truth.to_dataset(), 2, PriorConfig(),
                              TuningParams(), schedule, seed=seed + 1,
                              anchors=anchors))
    summary = summarize(trace)
    modes = [count_modes(curve) for curve in summary.density_mean]
    rho = np.mean([(params.gamma[0, 1] + params.gamma[1, 0]) / 2
                   for params in trace])
    return modes, rho


trimodal = 0
for seed in range(10):
    modes, rho = replicate(1000, seed)
    trimodal += all(m == 3 for m in modes)
    print("n=1000 seed {}: modes {} rho {:.4f}".format(seed, modes, rho))
print("trimodal in {}/10".format(trimodal))

for seed in range(3):
    modes, rho = replicate(5000, 100 + seed)
    print("n=5000 seed {}: modes {} rho {:.4f}".format(seed, modes, rho))
