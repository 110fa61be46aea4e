"""Exception types raised by the simulation layers."""


class DomainError(ValueError):
    """A parameter lies outside its physical domain."""


class BlochNormError(DomainError):
    """A Bloch vector reaches outside the unit ball."""


class NonHermitianError(ValueError):
    """An operator expected to be Hermitian is not."""


class NoUniqueSteadyState(ValueError):
    """The dynamics has no unique fixed point (undamped evolution)."""


class ZeroProbabilityOutcome(ValueError):
    """A selective measurement outcome has vanishing probability, so the
    conditional post-measurement state is undefined."""
