"""Self-verification suites cross-checking the independent code paths.

Each suite pits one implementation route against another (closed-form
state map vs observable propagator, closed-form witness vs numerical
pipeline, channel algebra vs its Bloch-coordinate action) and reports the
largest absolute deviation seen.  A clean build passes every suite; a
deliberately broken one fails the suite that owns the broken identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, dynamics, measurement, witness
from .dynamics import SystemParams

DEFAULT_SEED = 20260810

#: Grids for the closed-form vs pipeline comparison.
PIPELINE_TAUS = tuple(np.linspace(0.5, 20.0, 10))
PIPELINE_EPSILONS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _random_bloch(rng: np.random.Generator) -> np.ndarray:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return direction * rng.uniform() ** (1.0 / 3.0)


def _duality_suite(params: SystemParams, rng: np.random.Generator) -> SuiteResult:
    """Tr[X rho(t)] must equal Tr[X(t) rho] for the basis observables."""
    worst = 0.0
    basis = algebra.pauli_basis()
    for _ in range(100):
        rho = algebra.bloch_to_density(_random_bloch(rng))
        t = rng.uniform(0.0, 10.0)
        evolved_state = dynamics.evolve_state(params, rho, t)
        for observable in basis:
            schroedinger = algebra.expectation(observable, evolved_state)
            heisenberg = algebra.expectation(
                dynamics.evolve_observable(params, observable, t), rho
            )
            worst = max(worst, abs(schroedinger - heisenberg))
    return SuiteResult("duality", worst, 1e-10)


def _semigroup_suite(params: SystemParams, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(100):
        t1, t2 = rng.uniform(0.0, 10.0, size=2)
        composed = dynamics.heisenberg_propagator(params, t1) @ dynamics.heisenberg_propagator(params, t2)
        direct = dynamics.heisenberg_propagator(params, t1 + t2)
        worst = max(worst, float(np.max(np.abs(composed - direct))))
    return SuiteResult("semigroup", worst, 1e-10)


def _witness_pipeline_suite(params: SystemParams, tol: float) -> SuiteResult:
    worst = 0.0
    for eps in PIPELINE_EPSILONS:
        for tau in PIPELINE_TAUS:
            config = witness.ProtocolConfig(params=params, tau=float(tau), epsilon=eps)
            closed = witness.witness_closed_form(config)
            piped = witness.witness_pipeline(config, tol)
            worst = max(worst, abs(closed - piped))
    return SuiteResult("witness-pipeline", worst, 10.0 * tol)


def _measurement_suite(rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(100):
        eps = rng.uniform()
        e_plus, e_minus = measurement.effects(eps)
        a_plus, a_minus = measurement.kraus_operators(eps)
        worst = max(worst, float(np.max(np.abs(e_plus + e_minus - algebra.IDENTITY))))
        worst = max(worst, float(np.max(np.abs(a_plus @ a_plus - e_plus))))
        worst = max(worst, float(np.max(np.abs(a_minus @ a_minus - e_minus))))
        r = _random_bloch(rng)
        shrink = np.sqrt(1.0 - eps * eps)
        updated = measurement.nonselective_update(algebra.bloch_to_density(r), eps)
        expected = np.array([r[0], shrink * r[1], shrink * r[2]])
        worst = max(worst, float(np.max(np.abs(algebra.density_to_bloch(updated) - expected))))
    return SuiteResult("measurement", worst, 1e-12)


def _steady_state_suite(params: SystemParams) -> SuiteResult:
    fixed = dynamics.steady_state(params)
    relaxed = dynamics.evolve_state(params, fixed, 5.0 / params.gamma)
    deviation = float(np.max(np.abs(relaxed - fixed)))
    return SuiteResult("steady-state", deviation, 1e-12)


def run_verification(
    params: SystemParams, tol: float = 1e-9, seed: int = DEFAULT_SEED
) -> list[SuiteResult]:
    """Run every suite applicable to the given parameters."""
    rng = np.random.default_rng(seed)
    results = [
        _duality_suite(params, rng),
        _semigroup_suite(params, rng),
        _witness_pipeline_suite(params, tol),
        _measurement_suite(rng),
    ]
    if params.gamma0 > 0:
        results.append(_steady_state_suite(params))
    return results
