"""Shared random-state helpers for the test suite."""

import numpy as np

from qwitness import algebra


def random_bloch(rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    """Uniform direction; radius 1 for pure states, ball-uniform otherwise."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    if pure:
        return v
    return v * rng.uniform() ** (1.0 / 3.0)


def random_density(rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    return algebra.bloch_to_density(random_bloch(rng, pure))


def random_observable(rng: np.random.Generator) -> np.ndarray:
    return algebra.operator_from_coefficients(rng.uniform(-1.0, 1.0, size=4))


def min_eigenvalue(rho: np.ndarray) -> float:
    return algebra.eigenvalues_2x2(rho)[0]
