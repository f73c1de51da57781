from .tuning import TuningParams, Schedule
from .state import McmcState, MoveCounter
from .trace import Trace
from .moves import (step_move_knot, step_update_coeffs, step_update_zeta,
                    step_update_delta, step_update_gamma,
                    step_update_zero_weights, step_birth, step_death,
                    step_birth_death, log_birth_ratio, log_death_ratio)
from .chain import run_chain
