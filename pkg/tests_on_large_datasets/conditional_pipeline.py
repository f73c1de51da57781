from __future__ import print_function, division
import numpy as np

from splinehmm.simulate import (simulate_zero_inflated, substate_params,
                                simulate_activity, activity_frame)
from splinehmm.prior import PriorConfig
from splinehmm.sampler import TuningParams, Schedule, run_chain
from splinehmm.postprocessing import relabel, summarize
from splinehmm.conditional import PipelineConfig, run_pipeline

"""
Recovery of the zero-inflated rest sub-states: zero weights within 0.05
and persistence probabilities within 0.03 of the truth.  Then the whole
two-level pipeline on four simulated days.
"""

truth = simulate_zero_inflated(substate_params(), 5000, seed=0)
trace = relabel(run_chain(truth.to_dataset(), 2, PriorConfig(),
                          TuningParams(),
                          Schedule(burn_in=20000, iters=20000, thin=10),
                          seed=1, zero_inflated=True, progress=True))
summary = summarize(trace)
print("w: estimated", summary.mean['w'], "true", truth.zero_weights)
print("diag(Gamma): estimated", np.diag(summary.mean['gamma']),
      "true", np.diag(truth.gamma))

activity = simulate_activity(n_days=4, seed=2)
result = run_pipeline(activity_frame(activity), [2, 3], PipelineConfig(),
                      schedule=Schedule(burn_in=10000, iters=10000, thin=10),
                      seed=3, threads=2)
print(result.bout_frame().to_string())
print("selection", result.main.to_dict()['post_probs'])
