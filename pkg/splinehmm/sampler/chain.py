from __future__ import print_function, division
import logging
from warnings import warn

from tqdm import tqdm

from ..consts import CACHE_CHECK_EVERY
from ..prior import init_state
from ..utils import as_generator
from ..exceptions import PerformanceWarning
from .state import McmcState
from .trace import Trace
from .tuning import ScaleAdapter, SCALE_FOR_MOVE
from .moves import (step_move_knot, step_update_coeffs, step_update_zeta,
                    step_update_delta, step_update_gamma,
                    step_update_zero_weights, step_birth_death)

logger = logging.getLogger(__name__)

SWEEP = (
    ('knot', step_move_knot),
    ('coeffs', step_update_coeffs),
    ('zeta', step_update_zeta),
    ('delta', step_update_delta),
    ('gamma', step_update_gamma),
    ('weights', step_update_zero_weights),
)

# Burn-in acceptance rates outside this band trigger a warning.
ACCEPTANCE_BAND = (0.02, 0.9)


def _rates(state):
    return ' '.join('{}={:.2f}'.format(move, counter.rate)
                    for move, counter in sorted(state.counters.items())
                    if counter.proposed)


def _warn_on_acceptance(state, tuning):
    for move in SCALE_FOR_MOVE:
        counter = state.counters[move]
        if (counter.proposed >= 50 and tuning.scale(move) > 0 and
                not ACCEPTANCE_BAND[0] <= counter.rate <= ACCEPTANCE_BAND[1]):
            warn("Acceptance rate of the '{}' move at the end of burn-in is"
                 " {:.3f}; consider changing its proposal scale."
                 .format(move, counter.rate), PerformanceWarning)


def run_chain(data, N, prior_cfg, tuning, schedule, seed=None, initial=None,
              anchors=None, zero_inflated=False, progress=False,
              check_every=CACHE_CHECK_EVERY):
    """Runs one reversible-jump chain.

    Each sweep performs the knot, coefficient, zeta, delta and Gamma
    updates (plus the zero-weight update for zero-inflated models) and then
    either a birth or a death.  Proposal scales adapt during burn-in only.

    Parameters
    ----------
    data : Dataset
    N : int
    prior_cfg : PriorConfig
    tuning : TuningParams
        Not modified; the chain adapts a copy.
    schedule : Schedule
    seed : seed or np.random.Generator
    initial : HmmParams, optional
        Starting state; `init_state` is used if not given.
    anchors : sequence of N floats, optional
        Location hints for `init_state`.
    zero_inflated : bool
    progress : bool
        Show a progress bar.
    check_every : int
        Sweeps between checks of the cached log densities.

    Returns
    -------
    Trace with 1 + schedule.iters // schedule.thin draws.

    Raises
    ------
    NumericError (with the sweep index) if the caches drift.
    """
    rng = as_generator(seed)
    tuning = tuning.resolved(data.b - data.a)
    if initial is None:
        params = init_state(data, N, prior_cfg, rng, anchors=anchors,
                            zero_inflated=zero_inflated)
    else:
        params = initial.validate()
        if params.N != N:
            raise ValueError("initial state has {} states, expected {}"
                             .format(params.N, N))
    state = McmcState(params, data, prior_cfg, rng)
    adapter = ScaleAdapter(tuning, data.b - data.a) if tuning.adapt else None
    trace = Trace(N)

    burn_in, iters, thin = schedule.burn_in, schedule.iters, schedule.thin
    total = burn_in + iters
    log_every = max(total // 10, 1)
    logger.info("Starting chain: N=%d, K=%d, %d burn-in and %d sweeps",
                N, params.K, burn_in, iters)
    if burn_in == 0:
        trace.append(0, state.params, state.log_likelihood, state.log_prior)

    for sweep in tqdm(range(total), disable=not progress,
                      desc="N={}".format(N)):
        burning = sweep < burn_in
        for move, step in SWEEP:
            counter = state.counters[move]
            proposed, accepted = counter.proposed, counter.accepted
            step(state, tuning)
            if burning and adapter is not None and \
                    counter.proposed > proposed:
                adapter.update(move, (counter.accepted - accepted) /
                               (counter.proposed - proposed), sweep)
        step_birth_death(state, tuning)

        done = sweep + 1
        if done == burn_in:
            trace.append(done, state.params, state.log_likelihood,
                         state.log_prior)
            _warn_on_acceptance(state, tuning)
            logger.info("Burn-in finished; proposal scales frozen at %s",
                        {attr: getattr(tuning, attr)
                         for attr in sorted(SCALE_FOR_MOVE.values())})
        elif done > burn_in and (done - burn_in) % thin == 0:
            trace.append(done, state.params, state.log_likelihood,
                         state.log_prior)
        if done % check_every == 0:
            state.check_caches(sweep=done)
        if done % log_every == 0:
            logger.info("N=%d sweep %d/%d: K=%d, log-likelihood=%.4f,"
                        " acceptance %s", N, done, total, state.K,
                        state.log_likelihood, _rates(state))

    trace.acceptance = {move: (counter.proposed, counter.accepted)
                        for move, counter in state.counters.items()}
    trace.tuning = tuning.to_dict()
    return trace
