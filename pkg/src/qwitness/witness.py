"""Two-time protocol and the no-signaling-in-time witness.

Protocol: prepare the qubit in |+>, let it relax for tau/2, apply (or
skip) a nonselective sigma_x measurement of strength epsilon, relax for
another tau/2, then measure the projector onto |+>.  The witness is the
absolute difference between the final-outcome probability with and
without the intermediate measurement,

    W(tau, epsilon) = exp(-gamma tau / 2) / 2 * f(epsilon) * sin^2(omega tau / 2),

with amplitude factor f(epsilon) = 1 - sqrt(1 - epsilon^2).  Three
independent evaluations are provided: the closed form above, a numerical
pipeline composing the RK4 integrator with the measurement channel, and a
Monte Carlo sampler of the actual outcome statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra, dynamics, measurement
from .dynamics import SystemParams
from .errors import DomainError

#: Protocol initial state |+><+|.
INITIAL_STATE = algebra.PROJECTOR_PLUS


@dataclass(frozen=True)
class ProtocolConfig:
    """One protocol instance: system parameters, total time, strength."""

    params: SystemParams
    tau: float
    epsilon: float

    def __post_init__(self):
        if self.tau < 0:
            raise DomainError(f"tau must be nonnegative, got {self.tau}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise DomainError(f"epsilon must lie in [0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class WitnessPoint:
    """One sweep row; witness = |p_unmeasured - p_measured| by construction."""

    tau: float
    epsilon: float
    p_unmeasured: float
    p_measured: float
    witness: float
    epsilon_eff: float


def amplitude_factor(epsilon: float) -> float:
    """Witness amplitude factor f(epsilon) = 1 - sqrt(1 - epsilon^2).

    Monotone from f(0) = 0 to f(1) = 1 with f(eps)/eps^2 -> 1/2 for weak
    measurements and diverging slope at the projective end.  Evaluated as
    eps^2 / (1 + sqrt(1 - eps^2)) to stay accurate for small eps.
    """
    epsilon = float(epsilon)
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in [0, 1], got {epsilon}")
    return epsilon * epsilon / (1.0 + math.sqrt(1.0 - epsilon * epsilon))


def prob_unmeasured(config: ProtocolConfig) -> float:
    """Probability of the final |+> outcome without the intermediate step,
    (1 + exp(-gamma tau / 2) cos(omega tau)) / 2."""
    g, w, tau = config.params.gamma, config.params.omega, config.tau
    return 0.5 * (1.0 + math.exp(-g * tau / 2) * math.cos(w * tau))


def prob_measured(config: ProtocolConfig) -> float:
    """Probability of the final |+> outcome with the intermediate
    nonselective measurement applied at tau/2."""
    g, w, tau = config.params.gamma, config.params.omega, config.tau
    half = w * tau / 2
    shrink = math.sqrt(1.0 - config.epsilon**2)
    return 0.5 * (
        1.0
        + math.exp(-g * tau / 2)
        * (math.cos(half) ** 2 - shrink * math.sin(half) ** 2)
    )


def witness_closed_form(config: ProtocolConfig) -> float:
    """Closed-form witness; identical to |prob_unmeasured - prob_measured|."""
    g, w, tau = config.params.gamma, config.params.omega, config.tau
    return (
        0.5
        * math.exp(-g * tau / 2)
        * amplitude_factor(config.epsilon)
        * math.sin(w * tau / 2) ** 2
    )


def effective_strength(config: ProtocolConfig) -> float:
    """Measurement strength whose undamped witness amplitude matches the
    damped one: f(epsilon_eff) = exp(-gamma tau / 2) f(epsilon).

    Always in [0, epsilon]; equals epsilon exactly at tau = 0 or gamma = 0,
    where the map is the identity.  Elsewhere evaluated via
    sqrt(v (2 - v)) with v = exp(-gamma tau / 2) f(epsilon) so the defining
    identity holds to full precision.
    """
    decay = math.exp(-config.params.gamma * config.tau / 2)
    if decay == 1.0:
        return config.epsilon
    damped = decay * amplitude_factor(config.epsilon)
    return math.sqrt(damped * (2.0 - damped))


def pipeline_probabilities(
    config: ProtocolConfig, tol: float = 1e-10, t_measure: float | None = None
) -> tuple[float, float]:
    """Both protocol probabilities from the numerical integrator.

    No closed forms enter: each arm composes evolve_state_numerical with
    the measurement channel and the final projector expectation.
    t_measure moves the intermediate measurement away from the default
    tau/2 (the closed forms hold only for the symmetric choice).
    """
    if t_measure is None:
        t_measure = config.tau / 2
    if not 0.0 <= t_measure <= config.tau:
        raise DomainError(f"measurement time {t_measure} outside [0, {config.tau}]")
    unmeasured = dynamics.evolve_state_numerical(
        config.params, INITIAL_STATE, config.tau, tol
    )
    mid = dynamics.evolve_state_numerical(config.params, INITIAL_STATE, t_measure, tol)
    mid = measurement.nonselective_update(mid, config.epsilon)
    measured = dynamics.evolve_state_numerical(
        config.params, mid, config.tau - t_measure, tol
    )
    return (
        algebra.expectation(algebra.PROJECTOR_PLUS, unmeasured),
        algebra.expectation(algebra.PROJECTOR_PLUS, measured),
    )


def witness_pipeline(config: ProtocolConfig, tol: float = 1e-10) -> float:
    """Witness from the numerical pipeline; agrees with witness_closed_form
    within 10 tol."""
    p, p_prime = pipeline_probabilities(config, tol)
    return abs(p - p_prime)


def _clip_probability(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def witness_monte_carlo(
    config: ProtocolConfig, shots: int, seed: int
) -> tuple[float, float]:
    """Witness estimate from sampled protocol runs, with its standard error.

    Each arm runs `shots` times: the measured arm samples the intermediate
    outcome from the selective-update probabilities, then the final
    projector outcome from the conditional state.  Outcome counts are
    drawn with one dedicated generator per arm, spawned deterministically
    from the seed, so results are reproducible and independent of
    evaluation order.  Returns (|p_hat - p_hat'|, binomial standard errors
    combined in quadrature).
    """
    if shots < 100:
        raise DomainError(f"need at least 100 shots, got {shots}")
    seq_unmeasured, seq_measured = np.random.SeedSequence(seed).spawn(2)
    rng_unmeasured = np.random.default_rng(seq_unmeasured)
    rng_measured = np.random.default_rng(seq_measured)
    params, tau, eps = config.params, config.tau, config.epsilon

    p = _clip_probability(
        algebra.expectation(
            algebra.PROJECTOR_PLUS, dynamics.evolve_state(params, INITIAL_STATE, tau)
        )
    )
    hits_unmeasured = int(rng_unmeasured.binomial(shots, p))

    mid = dynamics.evolve_state(params, INITIAL_STATE, tau / 2)
    e_plus, _ = measurement.effects(eps)
    q_plus = _clip_probability(float(np.trace(e_plus @ mid).real))
    branch_shots = {
        measurement.PLUS: int(rng_measured.binomial(shots, q_plus)),
    }
    branch_shots[measurement.MINUS] = shots - branch_shots[measurement.PLUS]
    hits_measured = 0
    for outcome, n in branch_shots.items():
        if n == 0:
            continue
        conditional, _ = measurement.selective_update(mid, eps, outcome)
        p_final = _clip_probability(
            algebra.expectation(
                algebra.PROJECTOR_PLUS,
                dynamics.evolve_state(params, conditional, tau / 2),
            )
        )
        hits_measured += int(rng_measured.binomial(n, p_final))

    p_hat = hits_unmeasured / shots
    p_hat_prime = hits_measured / shots
    stderr = math.sqrt(
        p_hat * (1.0 - p_hat) / shots + p_hat_prime * (1.0 - p_hat_prime) / shots
    )
    return abs(p_hat - p_hat_prime), stderr


def sweep(
    params: SystemParams, tau_grid, epsilon_list
) -> list[WitnessPoint]:
    """Closed-form witness data over a (strength, time) grid.

    Rows are ordered epsilon-major, tau-ascending within each strength;
    grid points are independent, so callers may evaluate them in parallel
    and merge by index.
    """
    taus = [float(t) for t in tau_grid]
    epsilons = [float(e) for e in epsilon_list]
    if not taus or not epsilons:
        raise DomainError("sweep grids must be nonempty")
    points = []
    for eps in epsilons:
        for tau in sorted(taus):
            config = ProtocolConfig(params=params, tau=tau, epsilon=eps)
            p = prob_unmeasured(config)
            p_prime = prob_measured(config)
            points.append(
                WitnessPoint(
                    tau=tau,
                    epsilon=eps,
                    p_unmeasured=p,
                    p_measured=p_prime,
                    witness=witness_closed_form(config),
                    epsilon_eff=effective_strength(config),
                )
            )
    return points
