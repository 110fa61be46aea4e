"""Damped-qubit simulator for the no-signaling-in-time quantum witness.

A qubit with frequency omega relaxes through a thermal bath while a
two-time protocol probes its nonclassicality: prepare |+>, optionally
apply a nonselective sigma_x measurement of finite strength halfway, and
read out the |+> population at the end.  The package provides the exact
closed forms, an independent numerical integrator, a Monte Carlo sampler
and a CLI that sweeps the witness, the amplitude factor and the effective
measurement strength.
"""

from .algebra import (
    IDENTITY,
    PROJECTOR_MINUS,
    PROJECTOR_PLUS,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    bloch_to_density,
    density_to_bloch,
    expectation,
    pauli_basis,
)
from .dynamics import (
    SystemParams,
    evolve_observable,
    evolve_state,
    evolve_state_numerical,
    heisenberg_propagator,
    liouvillian_matrix,
    steady_state,
    thermal_occupation,
)
from .errors import (
    BlochNormError,
    DomainError,
    NonHermitianError,
    NoUniqueSteadyState,
    ZeroProbabilityOutcome,
)
from .measurement import (
    disturbance,
    effects,
    fidelity,
    kraus_operators,
    max_disturbable_state,
    nonselective_update,
    selective_update,
    sqrt_fidelity,
)
from .verify import run_verification
from .witness import (
    ProtocolConfig,
    WitnessPoint,
    amplitude_factor,
    effective_strength,
    prob_measured,
    prob_unmeasured,
    sweep,
    witness_closed_form,
    witness_monte_carlo,
    witness_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "IDENTITY",
    "PROJECTOR_MINUS",
    "PROJECTOR_PLUS",
    "SIGMA_MINUS",
    "SIGMA_PLUS",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "BlochNormError",
    "DomainError",
    "NonHermitianError",
    "NoUniqueSteadyState",
    "ProtocolConfig",
    "SystemParams",
    "WitnessPoint",
    "ZeroProbabilityOutcome",
    "amplitude_factor",
    "bloch_to_density",
    "density_to_bloch",
    "disturbance",
    "effective_strength",
    "effects",
    "evolve_observable",
    "evolve_state",
    "evolve_state_numerical",
    "expectation",
    "fidelity",
    "heisenberg_propagator",
    "kraus_operators",
    "liouvillian_matrix",
    "max_disturbable_state",
    "nonselective_update",
    "pauli_basis",
    "prob_measured",
    "prob_unmeasured",
    "run_verification",
    "selective_update",
    "sqrt_fidelity",
    "steady_state",
    "sweep",
    "thermal_occupation",
    "witness_closed_form",
    "witness_monte_carlo",
    "witness_pipeline",
]
