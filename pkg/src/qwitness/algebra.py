"""Exact 2x2 operator algebra for a single qubit.

Everything in this package works in the fixed operator basis
(sigma_x, sigma_y, sigma_z, I), in that order.  States are plain 2x2
complex numpy arrays (density matrices) or, equivalently, real Bloch
vectors r = (<sigma_x>, <sigma_y>, <sigma_z>) with |r| <= 1.  All
functions are pure and the module constants are read-only, so the whole
module is safe to use from any number of threads.
"""

from __future__ import annotations

import numpy as np

from .errors import BlochNormError, NonHermitianError

#: Tolerance for algebraic identities (hermiticity, trace, round trips).
ATOL = 1e-12

#: Slack allowed on the Bloch-ball constraint |r|^2 <= 1.
BLOCH_SLACK = 1e-10


def _readonly(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


SIGMA_X = _readonly(np.array([[0, 1], [1, 0]], dtype=complex))
SIGMA_Y = _readonly(np.array([[0, -1j], [1j, 0]], dtype=complex))
SIGMA_Z = _readonly(np.array([[1, 0], [0, -1]], dtype=complex))
IDENTITY = _readonly(np.eye(2, dtype=complex))

#: Raising and lowering operators, (sigma_x +/- i sigma_y) / 2.
SIGMA_PLUS = _readonly((SIGMA_X + 1j * SIGMA_Y) / 2)
SIGMA_MINUS = _readonly((SIGMA_X - 1j * SIGMA_Y) / 2)

#: Projectors onto the sigma_x eigenstates |+> and |->.
PROJECTOR_PLUS = _readonly((IDENTITY + SIGMA_X) / 2)
PROJECTOR_MINUS = _readonly((IDENTITY - SIGMA_X) / 2)


def pauli_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return the operator basis (sigma_x, sigma_y, sigma_z, I)."""
    return SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY


def is_hermitian(x: np.ndarray, atol: float = ATOL) -> bool:
    return bool(np.all(np.abs(x - x.conj().T) <= atol))


def eigenvalues_2x2(x: np.ndarray) -> tuple[float, float]:
    """Eigenvalues of a Hermitian 2x2 matrix from trace and determinant.

    Closed form, branch-free; preferred over iterative decompositions at
    this dimension.
    """
    half_trace = 0.5 * float(np.trace(x).real)
    det = float(np.linalg.det(x).real)
    gap = max(half_trace * half_trace - det, 0.0) ** 0.5
    return half_trace - gap, half_trace + gap


def check_density_matrix(rho: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Validate trace, hermiticity and positivity of a density matrix.

    Returns the input unchanged so calls can be inlined.  Positivity is
    checked with floating-point slack: both eigenvalues >= -atol.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
    if abs(np.trace(rho) - 1.0) > atol:
        raise ValueError(f"density matrix trace {np.trace(rho)} != 1")
    if not is_hermitian(rho, atol):
        raise NonHermitianError("density matrix is not Hermitian")
    low, _ = eigenvalues_2x2(rho)
    if low < -atol:
        raise ValueError(f"density matrix has negative eigenvalue {low}")
    return rho


def bloch_to_density(r) -> np.ndarray:
    """Density matrix (I + r . sigma) / 2 for a Bloch vector r.

    Raises BlochNormError if r sticks out of the unit ball beyond the
    floating-point slack.
    """
    rx, ry, rz = (float(c) for c in r)
    norm_sq = rx * rx + ry * ry + rz * rz
    if norm_sq > 1.0 + BLOCH_SLACK:
        raise BlochNormError(f"Bloch vector norm^2 = {norm_sq} exceeds 1")
    return 0.5 * (IDENTITY + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z)


def density_to_bloch(rho: np.ndarray) -> np.ndarray:
    """Bloch vector r_i = Tr(sigma_i rho). Inverse of bloch_to_density."""
    rho = np.asarray(rho, dtype=complex)
    return np.array(
        [
            float(np.trace(SIGMA_X @ rho).real),
            float(np.trace(SIGMA_Y @ rho).real),
            float(np.trace(SIGMA_Z @ rho).real),
        ]
    )


def expectation(x: np.ndarray, rho: np.ndarray) -> float:
    """Expectation value Tr(x rho) of a Hermitian observable."""
    if not is_hermitian(np.asarray(x, dtype=complex)):
        raise NonHermitianError("observable is not Hermitian")
    return float(np.trace(np.asarray(x) @ np.asarray(rho)).real)


def pauli_coefficients(x: np.ndarray) -> np.ndarray:
    """Coordinates (c_x, c_y, c_z, c_I) of a Hermitian operator.

    Defined by x = c_x sigma_x + c_y sigma_y + c_z sigma_z + c_I I; the
    coefficients are real for Hermitian x and the round trip through
    operator_from_coefficients is exact.
    """
    x = np.asarray(x, dtype=complex)
    return np.array(
        [
            0.5 * float(np.trace(SIGMA_X @ x).real),
            0.5 * float(np.trace(SIGMA_Y @ x).real),
            0.5 * float(np.trace(SIGMA_Z @ x).real),
            0.5 * float(np.trace(x).real),
        ]
    )


def operator_from_coefficients(c) -> np.ndarray:
    cx, cy, cz, ci = (float(v) for v in c)
    return cx * SIGMA_X + cy * SIGMA_Y + cz * SIGMA_Z + ci * IDENTITY
