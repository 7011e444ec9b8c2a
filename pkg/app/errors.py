"""
Exception hierarchy for the lab.
"""


class LabError(Exception):
    """Base class for every failure raised by the lab."""


class DomainError(LabError, ValueError):
    """An argument lies outside the domain of the operation."""


class NotReducedError(DomainError):
    """A quadratic form handed to the reduction step is not reduced."""


class ReductionError(LabError, RuntimeError):
    """Reduction to the fundamental domain did not terminate."""


class EnumerationCapError(LabError, RuntimeError):
    """Translate enumeration produced more hits than allowed."""

    def __init__(self, cap: int, radius: float):
        self.cap = cap
        self.radius = radius
        super().__init__(
            f"Translate enumeration exceeded the hit cap of {cap} (radius {radius:.6g})"
        )


class QuadratureError(LabError, RuntimeError):
    """A quadrature rule failed to converge."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        self.diagnostics = diagnostics or {}
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        super().__init__(f"{message} ({details})" if details else message)


class PieceCapError(LabError, RuntimeError):
    """The geodesic renderer produced more arc pieces than allowed."""
