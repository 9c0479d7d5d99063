"""Exception taxonomy shared across the package.

Every failure the library raises deliberately goes through one of these
classes so callers (and the verification driver) can tell bad inputs,
infeasible geometry, numerical breakdown, and bad configuration apart.
"""

__all__ = [
    "RoughKernelError",
    "DomainError",
    "ParameterError",
    "GeometryError",
    "NumericError",
    "ConfigError",
]


class RoughKernelError(Exception):
    """Base class for all deliberate errors raised by this package."""


class DomainError(RoughKernelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(RoughKernelError, ValueError):
    """A tuning parameter (grid size, tolerance, index) is unusable."""


class GeometryError(RoughKernelError, ValueError):
    """A direction family or arc layout violates a geometric invariant."""


class NumericError(RoughKernelError, RuntimeError):
    """An iterative numerical routine failed to converge or lost accuracy."""


class ConfigError(RoughKernelError, ValueError):
    """A run configuration (file or flags) could not be parsed or validated."""
