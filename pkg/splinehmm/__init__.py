# re-enable deprecation warnings
import warnings
warnings.simplefilter('default')

from splinehmm.version import version as __version__
from splinehmm.splines import (KnotConfig, SplineCoeffs, build_knot_config,
                               eval_basis, emission_density, basis_cdf,
                               insert_knot_transform, delete_knot_transform)
from splinehmm.dataset import Dataset
from splinehmm.hmm import (HmmParams, log_likelihood, viterbi,
                           smoothed_probs, cumulative_probs)
from splinehmm.prior import PriorConfig, log_prior, init_state
from splinehmm.sampler import TuningParams, Schedule, Trace, run_chain
from splinehmm.selection import (run_parallel, posterior_model_probs, dic,
                                 select)
from splinehmm.results import SelectionResult, Summary
from splinehmm.postprocessing import relabel, summarize, point_estimate
from splinehmm.metrics import kld, decoding_accuracy, count_modes
from splinehmm.simulate import (GroundTruth, simulate_model1,
                                simulate_model2, simulate_model3,
                                simulate_spline_hmm, simulate_zero_inflated,
                                simulate_activity)
from splinehmm.conditional import (PipelineConfig, BoutSegmentation,
                                   extract_bouts, fit_main, fit_sub,
                                   run_pipeline)
from splinehmm.utils import show_versions
