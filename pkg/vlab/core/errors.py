"""
errors.py
#########

Exception hierarchy for the numerical modules. Every error derives from ValueError so
callers that only validate inputs can keep catching ValueError.

This module cannot import from other modules in this package to avoid circular dependencies.
"""

from typing import Optional


class VlabError(ValueError):
    """Base class for all vlab numerical and configuration errors."""


class GammaPoleError(VlabError):
    """An argument of Gamma lies within the guard radius of a non-positive integer."""

    def __init__(self, message: str, factor_index: Optional[int] = None) -> None:
        if factor_index is not None:
            message = f"{message} (gamma factor {factor_index})"
        super().__init__(message)
        self.factor_index = factor_index


class GammaRangeError(VlabError):
    """A scaled Gamma product does not fit into the double range."""


class AsymptoticThresholdError(VlabError):
    """An asymptotic formula was requested below its validity threshold."""


class ContourError(VlabError):
    """A vertical-line quadrature cannot be set up or did not meet its tail bound."""


class ResidueError(VlabError):
    """Pole enumeration or circle quadrature failed."""


class TruncationError(VlabError):
    """A series cannot be truncated within the configured cap."""


class CalibrationError(VlabError):
    """A fitted constant could not be determined."""


class ConfigurationError(VlabError):
    """Run configuration or series data is invalid."""
