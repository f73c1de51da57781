from .params import HmmParams
from .engine import (log_likelihood, viterbi, smoothed_probs,
                     cumulative_probs, emission_probs)
