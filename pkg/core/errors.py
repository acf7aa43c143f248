"""Exception hierarchy shared by all census modules.

The CLI maps these onto its exit-code contract: argument-type problems
exit 2, internal invariant violations exit 3.
"""

from __future__ import annotations


class CensusError(Exception):
    """Base class for every error raised by this package."""


class InvalidDiscriminantError(CensusError, ValueError):
    """D is not a fundamental discriminant (or not valid for the operation)."""

    def __init__(self, d: int, reason: str = "not a fundamental discriminant"):
        super().__init__(f"D={d}: {reason}")
        self.d = d


class PureCubicCaseError(InvalidDiscriminantError):
    """D = -3 reached the general-case machinery; it belongs to the pure cubic series."""

    def __init__(self, d: int = -3):
        super().__init__(d, "K2 = Q(sqrt(-3)) is the pure cubic case; use the pure_cubic series")


class CapacityError(CensusError):
    """A requested size exceeds what the sieve or the counters can hold."""


class DivergentProductError(CensusError, ValueError):
    """An Euler factor whose logarithm has a nonzero degree-1 term."""


class InvariantViolation(CensusError):
    """An internal consistency check failed; the result must not be trusted."""
