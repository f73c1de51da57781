"""Metropolis-Hastings moves of the reversible-jump sampler.

Within-dimension moves:

* knot      - truncated normal step of one interior knot inside the window
              between its neighbours;
* coeffs    - Gaussian random walk on the unconstrained coefficients;
* zeta      - log-normal random walk on zeta;
* delta     - log-normal random walk on the unconstrained initial weights;
* gamma     - log-normal random walk on the unconstrained transition
              weights;
* weights   - logit random walk on the zero weights.

Trans-dimensional moves add or remove one interior knot, mapping the
coefficients with `insert_knot_transform` / `delete_knot_transform`.
Every step updates the state in place and returns it.
"""

from __future__ import print_function, division

import numpy as np
from scipy.special import erf, log_ndtr, expit, logit, logsumexp
from scipy.stats import truncnorm

from ..consts import K_MIN
from ..splines import (SplineCoeffs, build_knot_config, insert_knot_transform,
                       delete_knot_transform)
from ..hmm.engine import (observed_design, emission_probs,
                          log_likelihood_from_probs)
from ..prior import log_prior
from ..exceptions import SplineHMMError

_SQRT2 = np.sqrt(2.0)


def _metropolis(state, move, proposal, log_hastings=0.0, reuse=None):
    """Accepts or rejects `proposal` and updates the counters.

    Parameters
    ----------
    reuse : {None, 'design', 'probs', 'likelihood'}
        How much of the cached likelihood computation is still valid for
        the proposal.

    Returns
    -------
    bool : True if accepted.
    """
    state.counters[move].proposed += 1
    if proposal is None or not log_hastings > -np.inf:
        return False
    try:
        lp = log_prior(proposal, state.prior_cfg)
        if lp == -np.inf:
            return False
        if reuse == 'likelihood':
            design, probs, ll = state.design, state.probs, state.log_likelihood
        else:
            if reuse in ('design', 'probs'):
                design = state.design
            else:
                design = observed_design(proposal.knots, state.data)
            if reuse == 'probs':
                probs = state.probs
            else:
                probs = emission_probs(proposal, state.data, design)
            ll = log_likelihood_from_probs(proposal, probs)
    except (SplineHMMError, ValueError, FloatingPointError):
        return False
    log_alpha = (ll - state.log_likelihood) + (lp - state.log_prior) + \
        log_hastings
    if np.isnan(log_alpha):
        return False
    if np.log(state.rng.uniform()) < log_alpha:
        state.accept(proposal, ll, lp, design, probs)
        state.counters[move].accepted += 1
        return True
    return False


def _reject(state, move):
    state.counters[move].proposed += 1
    return False


def log_gauss_mass(lo, hi):
    """log(Phi(hi) - Phi(lo)) for lo < hi, without cancellation.

    Both ends in one tail are mirrored into the left tail and handled with
    `log_ndtr`; windows around the centre use `erf`, which keeps full
    relative precision near zero.
    """
    if lo > 0:
        lo, hi = -hi, -lo
    if hi < -1:
        log_lo, log_hi = log_ndtr(lo), log_ndtr(hi)
        return float(log_hi + np.log1p(-np.exp(log_lo - log_hi)))
    return float(np.log(0.5 * (erf(hi / _SQRT2) - erf(lo / _SQRT2))))


def _log_window_mass(centre, lo, hi, sd):
    return log_gauss_mass((lo - centre) / sd, (hi - centre) / sd)


def step_move_knot(state, tuning):
    """Moves one uniformly chosen interior knot.

    The proposal is a normal centred on the knot, truncated to the window
    between its neighbours (or the boundary), so the ordering is kept.  The
    Hastings ratio is the ratio of the two truncation constants.
    """
    params = state.params
    knots = params.knots
    K = knots.K
    k = int(state.rng.integers(K))
    ext = np.concatenate([[knots.a], knots.interior, [knots.b]])
    lo, r, hi = ext[k], ext[k + 1], ext[k + 2]
    sd = tuning.tau1
    if sd > 0:
        r_c = truncnorm.rvs((lo - r) / sd, (hi - r) / sd, loc=r, scale=sd,
                            random_state=state.rng)
        log_hastings = (_log_window_mass(r, lo, hi, sd) -
                        _log_window_mass(r_c, lo, hi, sd))
    else:
        r_c, log_hastings = r, 0.0
    if not lo < r_c < hi:
        return _reject(state, 'knot')
    interior = knots.interior.copy()
    interior[k] = r_c
    try:
        new_knots = build_knot_config(knots.a, knots.b, interior)
    except SplineHMMError:
        return _reject(state, 'knot')
    _metropolis(state, 'knot', params._replace(knots=new_knots),
                log_hastings)
    return state


def step_update_coeffs(state, tuning):
    """Gaussian random walk on the unconstrained coefficients."""
    params = state.params
    tau = tuning.tau2
    if tuning.coeff_block == 'state':
        for i in range(params.N):
            uncon = state.params.coeffs.uncon.copy()
            uncon[i] += tau * state.rng.standard_normal(uncon.shape[1])
            _metropolis(state, 'coeffs', state.params._replace(
                coeffs=SplineCoeffs(uncon)), reuse='design')
        return state
    uncon = params.coeffs.uncon + tau * state.rng.standard_normal(
        params.coeffs.uncon.shape)
    _metropolis(state, 'coeffs', params._replace(coeffs=SplineCoeffs(uncon)),
                reuse='design')
    return state


def step_update_zeta(state, tuning):
    """Log-normal random walk on zeta; the likelihood does not change."""
    params = state.params
    step = tuning.tau3 * state.rng.standard_normal()
    zeta = params.zeta * np.exp(step)
    _metropolis(state, 'zeta', params._replace(zeta=float(zeta)),
                log_hastings=step, reuse='likelihood')
    return state


def step_update_delta(state, tuning):
    """Joint log-normal random walk on the unconstrained initial weights."""
    params = state.params
    steps = tuning.tau4 * state.rng.standard_normal(params.N)
    _metropolis(state, 'delta', params._replace(
        delta_uncon=params.delta_uncon * np.exp(steps)),
        log_hastings=float(steps.sum()), reuse='probs')
    return state


def step_update_gamma(state, tuning):
    """Joint log-normal random walk on the unconstrained transition
    weights."""
    params = state.params
    steps = tuning.tau5 * state.rng.standard_normal((params.N, params.N))
    _metropolis(state, 'gamma', params._replace(
        gamma_uncon=params.gamma_uncon * np.exp(steps)),
        log_hastings=float(steps.sum()), reuse='probs')
    return state


def step_update_zero_weights(state, tuning):
    """Logit random walk on the zero weights under a uniform prior.

    Does nothing for models without zero inflation.
    """
    params = state.params
    w = params.zero_weights
    if w is None:
        return state
    with np.errstate(divide='ignore'):
        w_new = expit(logit(w) + tuning.tau_w *
                      state.rng.standard_normal(len(w)))
        log_hastings = float(np.sum(np.log(w_new * (1 - w_new)) -
                                    np.log(w * (1 - w))))
    _metropolis(state, 'weights', params._replace(zero_weights=w_new),
                log_hastings=log_hastings, reuse='design')
    return state


def birth_probability(K, k_max):
    """Probability of proposing a birth when there are K interior knots."""
    if K >= k_max:
        return 0.0
    if K == K_MIN:
        return 1.0
    return 0.5


def death_probability(K, k_max):
    if K <= K_MIN:
        return 0.0
    return 1.0 - birth_probability(K, k_max)


def birth_spreads(knots, alpha):
    """Standard deviation of the birth proposal around each interior knot:
    (r_{b+1} - r_{b-1})^alpha, with r_0 = a and r_{K+1} = b."""
    ext = np.concatenate([[knots.a], knots.interior, [knots.b]])
    return (ext[2:] - ext[:-2]) ** alpha


def log_birth_density(knots, r_c, alpha):
    """Log density of a new knot at `r_c`: the equal-weight mixture over all
    K anchors of normals truncated to [a, b]."""
    centres = knots.interior
    sd = birth_spreads(knots, alpha)
    log_pdf = truncnorm.logpdf(r_c, (knots.a - centres) / sd,
                               (knots.b - centres) / sd, loc=centres,
                               scale=sd)
    return float(logsumexp(log_pdf) - np.log(knots.K))


def birth_proposal_log_ratio(knots, r_c, k_max, alpha):
    """log [d_{K+1} / (K+1)] - log [b_K q(r_c)] for a birth from `knots`.

    The u variables are uniform and contribute nothing.
    """
    K = knots.K
    with np.errstate(divide='ignore'):
        return (np.log(death_probability(K + 1, k_max)) - np.log(K + 1) -
                np.log(birth_probability(K, k_max)) -
                log_birth_density(knots, r_c, alpha))


def propose_birth(params, r_c, u, k_max, alpha):
    """Bigger state and log Hastings term (proposal ratio plus Jacobian)
    for adding knot `r_c` with free variables `u`.

    Returns (None, -inf) when the map is singular.
    """
    new_knots, new_coeffs, log_jacobian = insert_knot_transform(
        params.knots, params.coeffs, r_c, u)
    if not np.isfinite(log_jacobian):
        return None, -np.inf
    proposal = params._replace(knots=new_knots, coeffs=new_coeffs)
    return proposal, (birth_proposal_log_ratio(params.knots, r_c, k_max,
                                               alpha) + log_jacobian)


def propose_death(params, d_star, k_max, alpha):
    """Smaller state, log Hastings term and recovered u for deleting
    interior knot `d_star` (1-based).

    Returns (None, -inf, u) when some recovered u lies outside (0, 1): the
    reverse birth could not have produced the current state.
    """
    r = params.knots.interior[d_star - 1]
    new_knots, new_coeffs, u, log_jacobian = delete_knot_transform(
        params.knots, params.coeffs, d_star)
    if not np.all((u > 0) & (u < 1)) or not np.isfinite(log_jacobian):
        return None, -np.inf, u
    proposal = params._replace(knots=new_knots, coeffs=new_coeffs)
    return proposal, (log_jacobian -
                      birth_proposal_log_ratio(new_knots, r, k_max,
                                               alpha)), u


def _fresh_log_posterior(params, data, prior_cfg):
    probs = emission_probs(params, data)
    return (log_likelihood_from_probs(params, probs) +
            log_prior(params, prior_cfg))


def log_birth_ratio(params, data, prior_cfg, alpha, r_c, u):
    """Full log acceptance ratio of a birth, computed without caches.

    Returns
    -------
    log_ratio : float
    proposal : HmmParams or None
    """
    proposal, log_hastings = propose_birth(params, r_c, u, prior_cfg.k_max,
                                           alpha)
    if proposal is None:
        return -np.inf, None
    return (_fresh_log_posterior(proposal, data, prior_cfg) -
            _fresh_log_posterior(params, data, prior_cfg) +
            log_hastings), proposal


def log_death_ratio(params, data, prior_cfg, alpha, d_star):
    """Full log acceptance ratio of a death, computed without caches.

    Returns
    -------
    log_ratio : float
    proposal : HmmParams or None
    u : (N,) array of recovered free variables
    """
    proposal, log_hastings, u = propose_death(params, d_star,
                                              prior_cfg.k_max, alpha)
    if proposal is None:
        return -np.inf, None, u
    return (_fresh_log_posterior(proposal, data, prior_cfg) -
            _fresh_log_posterior(params, data, prior_cfg) +
            log_hastings), proposal, u


def step_birth(state, tuning):
    """Proposes a new interior knot near a uniformly chosen existing one."""
    params = state.params
    knots = params.knots
    K = knots.K
    k_max = state.prior_cfg.k_max
    if K >= k_max:
        return state
    rng = state.rng
    anchor = int(rng.integers(K))
    centre = knots.interior[anchor]
    sd = birth_spreads(knots, tuning.alpha)[anchor]
    r_c = truncnorm.rvs((knots.a - centre) / sd, (knots.b - centre) / sd,
                        loc=centre, scale=sd, random_state=rng)
    u = rng.uniform(size=params.N)
    if (not knots.a < r_c < knots.b or np.any(knots.interior == r_c) or
            np.any(u <= 0)):
        return _reject(state, 'birth')
    proposal, log_hastings = propose_birth(params, r_c, u, k_max,
                                           tuning.alpha)
    _metropolis(state, 'birth', proposal, log_hastings)
    return state


def step_death(state, tuning):
    """Proposes removing a uniformly chosen interior knot."""
    params = state.params
    K = params.K
    if K <= K_MIN:
        return state
    d_star = int(state.rng.integers(K)) + 1
    proposal, log_hastings, _ = propose_death(
        params, d_star, state.prior_cfg.k_max, tuning.alpha)
    _metropolis(state, 'death', proposal, log_hastings)
    return state


def step_birth_death(state, tuning):
    """Chooses birth with probability b_K, otherwise death."""
    K = state.params.K
    k_max = state.prior_cfg.k_max
    if state.rng.uniform() < birth_probability(K, k_max):
        return step_birth(state, tuning)
    if K > K_MIN:
        return step_death(state, tuning)
    return state
