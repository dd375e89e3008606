"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "AffineQuantError",
    "ParameterDomainError",
    "PoleError",
    "DivergenceError",
    "AccuracyError",
    "AdmissibilityError",
    "ValidityError",
    "UnsupportedObservableError",
    "ObservableSyntaxError",
    "ConfigurationError",
    "AccuracyWarning",
]


class AffineQuantError(Exception):
    """Base class for all package-specific errors."""


class ParameterDomainError(AffineQuantError, ValueError):
    """A parameter lies outside the mathematical domain of the operation."""


class PoleError(ParameterDomainError):
    """Evaluation requested exactly at a pole of the function."""


class DivergenceError(AffineQuantError, ArithmeticError):
    """The requested quantity is a divergent integral or series."""


class AccuracyError(AffineQuantError, RuntimeError):
    """A numerical routine could not meet the requested tolerance.

    Carries the best available estimate and its error estimate so callers
    can decide whether to accept the degraded result.
    """

    def __init__(self, message, estimate=None, error_estimate=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


class AdmissibilityError(AffineQuantError, ValueError):
    """A fiducial vector fails the admissibility (finite-constant) condition."""


class ValidityError(AffineQuantError, ValueError):
    """An input object violates a structural requirement (e.g. hermiticity)."""


class UnsupportedObservableError(AffineQuantError, ValueError):
    """The observable form is outside the supported catalog."""


class ObservableSyntaxError(AffineQuantError, ValueError):
    """Parse failure for an observable expression.

    ``position`` is the 1-based column of the offending character.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ConfigurationError(AffineQuantError, ValueError):
    """Required configuration data (e.g. weight derivatives) is missing."""


class AccuracyWarning(UserWarning):
    """Result returned, but the estimated error exceeds the target."""
