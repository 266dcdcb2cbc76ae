"""Domain error types shared across the package.

Every failure mode that callers are expected to handle gets its own class so
that batch drivers and the CLI can surface the condition by name instead of
pattern-matching message strings.
"""


class QuartoscError(Exception):
    """Base class for all domain errors raised by this package."""


class DifferentiationFailure(QuartoscError):
    """Derivative evaluation unavailable or non-finite at the requested order."""


class IllConditioned(QuartoscError):
    """Root clusters cannot be separated at the requested tolerance."""


class MultiplicityTooHigh(QuartoscError):
    """A real root of multiplicity >= 3 puts the form outside the handled families."""


class ReductionFailed(QuartoscError):
    """No normal-form transform found within the iteration budget."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class NoConvergence(QuartoscError):
    """Iteration did not reach the requested tolerance within the step budget."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class SingularJacobian(QuartoscError):
    """Newton Jacobian numerically singular (condition number above cutoff)."""


class BudgetExceeded(QuartoscError):
    """Adaptive quadrature exceeded its panel budget before converging."""


class RhoDegenerate(QuartoscError):
    """Scaled regime explicitly requested while the quasi-distance is zero."""


class InsufficientRange(QuartoscError):
    """Fit input spans too few points or too narrow a range of scales."""


class NonPositiveMagnitude(QuartoscError):
    """Fit input contains zero or negative magnitudes; log model undefined."""
