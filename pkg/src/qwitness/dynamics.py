"""Damped-qubit dynamics: closed-form propagator and a numerical oracle.

The qubit has Hamiltonian H = omega sigma_z / 2 and relaxes through a
thermal bath with spontaneous rate gamma0 and occupation nbar, giving the
total rate gamma = gamma0 (2 nbar + 1).  Observable evolution is generated
by a 4x4 matrix acting on the (sigma_x, sigma_y, sigma_z, I) coefficient
vector; its exponential is known in closed form.  State evolution is the
dual affine map on Bloch vectors and is implemented independently of the
observable propagator so the two code paths can cross-check each other.
A fixed-step Runge-Kutta integrator of the master equation provides a
third, fully numerical route used as the verification oracle.

Time-dependent observables (an explicit dX/dt term in the evolution law)
are not supported; every observable used here is constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import DomainError, NoUniqueSteadyState

#: Without a tolerance the integrator takes 2**14 steps (step size t / 2**14).
DEFAULT_STEP_EXPONENT = 14

_MAX_STEPS = 1 << 20


def thermal_occupation(omega: float, temperature: float) -> float:
    """Mean bath occupation 1 / (exp(omega / T) - 1), with hbar = kB = 1.

    Returns exactly 0 at zero temperature.
    """
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if temperature < 0:
        raise DomainError(f"temperature must be nonnegative, got {temperature}")
    if temperature == 0:
        return 0.0
    x = omega / temperature
    if x > 700.0:  # exp would overflow; occupation underflows to zero
        return 0.0
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class SystemParams:
    """Qubit frequency and thermal-damping parameters.

    omega is the transition frequency (1/time), gamma0 the spontaneous
    decay rate (1/time) and nbar the dimensionless bath occupation.
    """

    omega: float
    gamma0: float = 0.0
    nbar: float = 0.0

    def __post_init__(self):
        if self.omega <= 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.gamma0 < 0:
            raise DomainError(f"gamma0 must be nonnegative, got {self.gamma0}")
        if self.nbar < 0:
            raise DomainError(f"nbar must be nonnegative, got {self.nbar}")

    @property
    def gamma(self) -> float:
        """Total transition rate gamma0 (2 nbar + 1)."""
        return self.gamma0 * (2.0 * self.nbar + 1.0)

    @classmethod
    def from_temperature(cls, omega: float, gamma0: float, temperature: float) -> "SystemParams":
        """Build parameters with nbar derived from a bath temperature."""
        return cls(omega=omega, gamma0=gamma0, nbar=thermal_occupation(omega, temperature))


def liouvillian_matrix(params: SystemParams) -> np.ndarray:
    """Generator of observable evolution on (sigma_x, sigma_y, sigma_z, I).

    The coherence block rotates at omega and decays at gamma/2, sigma_z
    decays at gamma with an affine feed -gamma0 from the identity, and the
    identity row is zero.
    """
    g = params.gamma
    return np.array(
        [
            [-g / 2, -params.omega, 0.0, 0.0],
            [params.omega, -g / 2, 0.0, 0.0],
            [0.0, 0.0, -g, -params.gamma0],
            [0.0, 0.0, 0.0, 0.0],
        ]
    )


def _decay_shift(params: SystemParams, t: float) -> float:
    """Affine sigma_z -> I entry gamma0 (exp(-gamma t) - 1) / gamma.

    Continuous at gamma = 0 where the limit is -gamma0 t.
    """
    g = params.gamma
    if g == 0.0:
        return -params.gamma0 * t
    return params.gamma0 * math.expm1(-g * t) / g


def heisenberg_propagator(params: SystemParams, t: float) -> np.ndarray:
    """Closed-form exponential of the Liouvillian times t.

    Acts on observable coefficient vectors: an observable with coordinates
    c evolves to propagator.T @ c (see evolve_observable).  The bottom row
    is (0, 0, 0, 1): the identity is conserved.
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    g = params.gamma
    damp = math.exp(-g * t / 2)
    c, s = math.cos(params.omega * t), math.sin(params.omega * t)
    return np.array(
        [
            [damp * c, -damp * s, 0.0, 0.0],
            [damp * s, damp * c, 0.0, 0.0],
            [0.0, 0.0, damp * damp, _decay_shift(params, t)],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def evolve_observable(params: SystemParams, x: np.ndarray, t: float) -> np.ndarray:
    """Heisenberg-picture evolution of a Hermitian observable."""
    coeffs = algebra.pauli_coefficients(x)
    evolved = heisenberg_propagator(params, t).T @ coeffs
    return algebra.operator_from_coefficients(evolved)


def evolve_state(params: SystemParams, rho: np.ndarray, t: float) -> np.ndarray:
    """Schroedinger-picture evolution of a density matrix.

    The affine Bloch map dual to the observable propagator: coherences
    rotate with +omega sense and damp at gamma/2, the inversion relaxes at
    gamma toward -gamma0/gamma.  Written out independently of
    heisenberg_propagator on purpose; the duality
    Tr[X rho(t)] = Tr[X(t) rho] is enforced by tests, not by construction.
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    algebra.check_density_matrix(rho)
    rx, ry, rz = algebra.density_to_bloch(rho)
    g = params.gamma
    damp = math.exp(-g * t / 2)
    c, s = math.cos(params.omega * t), math.sin(params.omega * t)
    return algebra.bloch_to_density(
        (
            damp * (c * rx - s * ry),
            damp * (s * rx + c * ry),
            damp * damp * rz + _decay_shift(params, t),
        )
    )


def _vectorized_generator(params: SystemParams) -> np.ndarray:
    """Master-equation generator as a 4x4 matrix on row-major vec(rho).

    Built directly from the Hamiltonian and the two thermal jump operators
    (decay at gamma0 (nbar + 1) via sigma_minus, excitation at
    gamma0 nbar via sigma_plus), so it shares no code with the closed-form
    propagator.
    """
    eye = algebra.IDENTITY
    h = 0.5 * params.omega * algebra.SIGMA_Z
    jumps = [
        (params.gamma0 * (params.nbar + 1.0), algebra.SIGMA_MINUS),
        (params.gamma0 * params.nbar, algebra.SIGMA_PLUS),
    ]
    gen = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for rate, a in jumps:
        if rate == 0.0:
            continue
        ada = a.conj().T @ a
        gen += rate * (
            np.kron(a, a.conj())
            - 0.5 * (np.kron(ada, eye) + np.kron(eye, ada.T))
        )
    return gen


def _steps_for_tolerance(params: SystemParams, t: float, tol: float) -> int:
    """Fixed step count keeping the global RK4 error below tol.

    Uses the standard model error ~ t rate^5 h^4 / 120 with a generous
    bound on the generator magnitude.
    """
    rate = params.omega + params.gamma + params.gamma0
    steps = math.ceil(t * (t * rate**5 / (120.0 * tol)) ** 0.25)
    return min(max(steps, 16), _MAX_STEPS)


def _rk4_step_matrix(gen: np.ndarray, h: float) -> np.ndarray:
    """One classical RK4 update of v' = gen v, collapsed to a matrix.

    For a constant linear generator the four-stage update equals the
    degree-4 Taylor polynomial of exp(h gen); precomputing it turns each
    step into a single matrix-vector product.
    """
    hm = h * gen
    hm2 = hm @ hm
    return np.eye(4, dtype=complex) + hm + hm2 / 2 + (hm2 @ hm) / 6 + (hm2 @ hm2) / 24


def evolve_state_numerical(
    params: SystemParams,
    rho: np.ndarray,
    t: float,
    tol: float = 1e-10,
    steps: int | None = None,
) -> np.ndarray:
    """Integrate the master equation with fixed-step classical RK4.

    Verification oracle for evolve_state: same physics, no closed forms.
    The step count is chosen so the estimated global error stays below
    tol (pass steps to override, e.g. for convergence studies); results
    agree with the closed form well within 10 tol.
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if tol is not None and tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if steps is None:
        if tol is None:
            steps = 1 << DEFAULT_STEP_EXPONENT
        else:
            steps = _steps_for_tolerance(params, t, tol)
    elif steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    rho = algebra.check_density_matrix(rho)
    if t == 0:
        return rho.copy()
    step = _rk4_step_matrix(_vectorized_generator(params), t / steps)
    v = rho.reshape(-1).astype(complex)
    for _ in range(steps):
        v = step @ v
    return v.reshape(2, 2)


def steady_state(params: SystemParams) -> np.ndarray:
    """Unique fixed point of the damped evolution.

    Bloch vector (0, 0, -gamma0/gamma) = (0, 0, -1/(2 nbar + 1)); pure
    ground state at nbar = 0, maximally mixed as nbar grows.
    """
    if params.gamma0 == 0:
        raise NoUniqueSteadyState("undamped dynamics: every sigma_z eigenstate mixture is stationary")
    return algebra.bloch_to_density((0.0, 0.0, -params.gamma0 / params.gamma))
