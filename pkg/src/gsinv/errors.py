"""Exception types shared across the package."""
from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


class QuadratureError(RuntimeError):
    """The quadrature refinement ladder failed to converge.

    Carries the last two level estimates for diagnosis.
    """

    def __init__(self, message, last_estimates=None):
        super().__init__(message)
        self.last_estimates = last_estimates


class TransformEvaluationError(RuntimeError):
    """A transform evaluator failed; ``z`` is the offending abscissa."""

    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z


class ProbeError(RuntimeError):
    """A diagnostic fit or probe did not meet its quality threshold."""


class PrecisionError(RuntimeError):
    """A series or refinement cannot reach the requested precision."""
