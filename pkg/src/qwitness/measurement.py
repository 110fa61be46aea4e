"""Finite-strength measurements in the sigma_x basis and their disturbance.

A measurement of strength epsilon in [0, 1] is described by the two
effects E(+/-) = ((1 +/- epsilon)/2) |+><+| + ((1 -/+ epsilon)/2) |-><-|
with Hermitian Kraus square roots A(+/-).  epsilon = 1 is the projective
limit, epsilon = 0 extracts nothing and leaves every state untouched.
The same family describes a noisy two-outcome spin detector whose
reliability parameter kappa enters as epsilon = 2 kappa - 1.

Conventions: outcomes are the integers +1 and -1; fidelity uses the
squared (Jozsa) convention, so F(pure, maximally mixed) = 1/2, with the
square-root variant available as sqrt_fidelity.
"""

from __future__ import annotations

import math

import numpy as np

from . import algebra
from .errors import DomainError, ZeroProbabilityOutcome

PLUS = +1
MINUS = -1
OUTCOMES = (PLUS, MINUS)

#: Outcome probabilities below this are treated as zero.
PROBABILITY_FLOOR = 1e-14


def _check_strength(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"measurement strength must lie in [0, 1], got {epsilon}")
    return epsilon


def _check_outcome(outcome: int) -> int:
    if outcome not in OUTCOMES:
        raise DomainError(f"outcome must be +1 or -1, got {outcome!r}")
    return outcome


def effects(epsilon: float) -> tuple[np.ndarray, np.ndarray]:
    """POVM pair (E+, E-); positive, summing to the identity exactly."""
    epsilon = _check_strength(epsilon)
    hi, lo = (1.0 + epsilon) / 2.0, (1.0 - epsilon) / 2.0
    e_plus = hi * algebra.PROJECTOR_PLUS + lo * algebra.PROJECTOR_MINUS
    e_minus = lo * algebra.PROJECTOR_PLUS + hi * algebra.PROJECTOR_MINUS
    return e_plus, e_minus


def kraus_operators(epsilon: float) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian Kraus pair (A+, A-) with A^2 equal to the matching effect."""
    epsilon = _check_strength(epsilon)
    hi, lo = math.sqrt((1.0 + epsilon) / 2.0), math.sqrt((1.0 - epsilon) / 2.0)
    a_plus = hi * algebra.PROJECTOR_PLUS + lo * algebra.PROJECTOR_MINUS
    a_minus = lo * algebra.PROJECTOR_PLUS + hi * algebra.PROJECTOR_MINUS
    return a_plus, a_minus


def nonselective_update(rho: np.ndarray, epsilon: float) -> np.ndarray:
    """State after measuring and discarding the outcome.

    A+ rho A+ + A- rho A-: trace preserving, unital and positivity
    preserving.  On Bloch vectors it keeps r_x and shrinks r_y, r_z by
    sqrt(1 - epsilon^2).
    """
    rho = algebra.check_density_matrix(rho)
    a_plus, a_minus = kraus_operators(epsilon)
    return a_plus @ rho @ a_plus + a_minus @ rho @ a_minus


def selective_update(
    rho: np.ndarray, epsilon: float, outcome: int
) -> tuple[np.ndarray, float]:
    """Post-measurement state and probability of one recorded outcome.

    Returns (A rho A / p, p) with p = Tr(E rho) for the effect matching
    the outcome.  The probability-weighted mixture over both outcomes
    recovers nonselective_update.
    """
    rho = algebra.check_density_matrix(rho)
    _check_outcome(outcome)
    index = 0 if outcome == PLUS else 1
    effect = effects(epsilon)[index]
    kraus = kraus_operators(epsilon)[index]
    probability = float(np.trace(effect @ rho).real)
    if probability < PROBABILITY_FLOOR:
        raise ZeroProbabilityOutcome(
            f"outcome {outcome:+d} has probability {probability}; post-state undefined"
        )
    return kraus @ rho @ kraus / probability, probability


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """State fidelity in the squared (Jozsa) convention.

    Qubit closed form Tr(rho sigma) + 2 sqrt(det rho det sigma); equals
    <psi|sigma|psi> when rho is the pure state |psi><psi|.
    """
    rho = algebra.check_density_matrix(rho)
    sigma = algebra.check_density_matrix(sigma)
    overlap = float(np.trace(rho @ sigma).real)
    det_product = float(np.linalg.det(rho).real) * float(np.linalg.det(sigma).real)
    return overlap + 2.0 * math.sqrt(max(det_product, 0.0))


def sqrt_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Square-root fidelity convention, Tr sqrt(sqrt(rho) sigma sqrt(rho))."""
    return math.sqrt(fidelity(rho, sigma))


def max_disturbable_state() -> np.ndarray:
    """The +1 sigma_y eigenstate, maximally disturbed by this measurement.

    Maximality over pure states is established by grid search in the test
    suite; every pure state with r_x = 0 ties.
    """
    return algebra.bloch_to_density((0.0, 1.0, 0.0))


def disturbance(epsilon: float) -> float:
    """Fidelity loss 1 - F of the maximally disturbable state.

    Computed through the channel-plus-fidelity pipeline; equals
    (1 - sqrt(1 - epsilon^2)) / 2, i.e. half the witness amplitude factor,
    ranging from 0 at epsilon = 0 to 1/2 in the projective limit.
    """
    state = max_disturbable_state()
    return 1.0 - fidelity(state, nonselective_update(state, epsilon))
