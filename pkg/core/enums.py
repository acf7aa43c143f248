"""Enumerations for series cases, prime splitting, and CLI surfaces."""

from enum import Enum


class SeriesCase(Enum):
    """Which explicit Dirichlet series a discriminant is routed to."""
    CYCLIC = "cyclic"                    # D = 1, K2 = Q
    PURE_CUBIC = "pure_cubic"            # D = -3
    EXACT_CASE5 = "exact_case5"          # D < 0, D != -3, 3 does not divide h(D)
    ASYMPTOTIC_ONLY = "asymptotic_only"  # everything else: main part only

    @property
    def is_exact(self) -> bool:
        return self is not SeriesCase.ASYMPTOTIC_ONLY

    @classmethod
    def from_string(cls, name: str) -> "SeriesCase":
        return cls(name.lower())


class Splitting(Enum):
    """Decomposition of a rational prime in a quadratic field."""
    SPLIT = 1
    INERT = -1
    RAMIFIED = 0

    @classmethod
    def from_symbol(cls, symbol: int) -> "Splitting":
        """Map a Kronecker symbol value to the splitting type."""
        return cls(symbol)


class ResidueClass(Enum):
    """Classification of D modulo 9 driving the local factor at 3."""
    COPRIME_TO_3 = "3∤D"
    THREE_MOD_9 = "D≡3 (9)"
    SIX_MOD_9 = "D≡6 (9)"

    @classmethod
    def of(cls, d: int) -> "ResidueClass":
        if d % 3:
            return cls.COPRIME_TO_3
        return cls.THREE_MOD_9 if d % 9 == 3 else cls.SIX_MOD_9


class ConditionKind(Enum):
    """Tags for prime predicates carried as data."""
    ALL = "all"
    KRONECKER = "kronecker"      # kronecker(d, p) == value
    CONGRUENCE = "congruence"    # p mod m in residues
    DIVIDES = "divides"          # p | d


class Verb(Enum):
    """Command-line verbs."""
    CONSTANTS = "constants"
    COUNT = "count"
    SERIES = "series"
    VERIFY = "verify"
    ALPHA = "alpha"
    RESIDUALS = "residuals"

    @classmethod
    def from_string(cls, name: str) -> "Verb":
        return cls(name.lower())


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"

    @classmethod
    def from_string(cls, name: str) -> "OutputFormat":
        return cls(name.lower())
