# molcav/errors.py
"""
Exception hierarchy shared by the physics, fitting and CLI layers.

Physics and fitting functions raise DomainError subclasses when a
precondition does not hold. The CLI maps them onto exit codes.
"""

from __future__ import annotations
from typing import Iterable, List


class MolcavError(Exception):
    """Root of every error raised by molcav."""


class DomainError(MolcavError, ValueError):
    """A physical or numerical precondition is violated."""


class InconsistencyError(DomainError):
    """Inputs are individually valid but jointly unphysical."""


class StabilityError(DomainError):
    """Controller gains put the discrete lock loop outside its stability region."""


class ConfigValidationError(MolcavError):
    """
    Raised when a scenario parameter file fails validation.

    Carries every violation found, not only the first.
    """

    def __init__(self, violations: Iterable[str], source: str = ""):
        self.violations: List[str] = list(violations)
        self.source = source
        where = f" in {source}" if source else ""
        super().__init__(
            f"{len(self.violations)} violation(s){where}: " + "; ".join(self.violations)
        )


def require_positive(name: str, value: float) -> float:
    """Return value, or raise DomainError naming the quantity when value <= 0."""
    if not value > 0:
        raise DomainError(f"{name} must be > 0 (got {value!r})")
    return value


def require_non_negative(name: str, value: float) -> float:
    """Return value, or raise DomainError naming the quantity when value < 0."""
    if not value >= 0:
        raise DomainError(f"{name} must be >= 0 (got {value!r})")
    return value


def require_unit_interval(name: str, value: float, *, open_low: bool = False) -> float:
    """Check 0 <= value <= 1 (or 0 < value <= 1 when open_low)."""
    low_ok = value > 0 if open_low else value >= 0
    if not (low_ok and value <= 1):
        bracket = "(0, 1]" if open_low else "[0, 1]"
        raise DomainError(f"{name} must lie in {bracket} (got {value!r})")
    return value


# Exit codes used by the CLI
EXIT_OK = 0
EXIT_IO_ERROR = 1
EXIT_VALIDATION_ERROR = 2
EXIT_DOMAIN_ERROR = 3
