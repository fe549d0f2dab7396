"""Exact computations around the Pell equation x^2 - d y^2 = +-1."""

from pellkit.errors import DomainError, InternalError, ResourceError, TheoremViolation

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InternalError",
    "ResourceError",
    "TheoremViolation",
    "__version__",
]
