"""Real numbers carrying a working-precision contract.

``error_bound`` is a heuristic tail bound (truncation estimates plus
rounding), not a rigorous interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

MIN_PRECISION_BITS = 96

Scalar = Union[int, Fraction, "mpmath.mpf"]


def to_mpf(x: Scalar) -> mpmath.mpf:
    """Exact-input conversion; Fractions go through numerator/denominator."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@dataclass(frozen=True)
class HighPrecReal:
    value: mpmath.mpf
    precision_bits: int
    error_bound: mpmath.mpf

    def __post_init__(self):
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}")
        if self.error_bound < 0:
            raise ValueError("error_bound must be non-negative")

    @classmethod
    def from_value(cls, value: Scalar, bits: int, error: Scalar = 0) -> "HighPrecReal":
        """Wrap a value computed at ``bits``; one rounding unit is always added."""
        with mpmath.workprec(bits + 16):
            v = to_mpf(value)
            err = to_mpf(error) + abs(v) * mpmath.ldexp(1, -bits)
        return cls(v, bits, err)

    # --- Arithmetic (errors propagate to first order plus rounding) ---

    def _wrap(self, value, error) -> "HighPrecReal":
        return HighPrecReal.from_value(value, self.precision_bits, error)

    def _coerce(self, other) -> "HighPrecReal":
        if isinstance(other, HighPrecReal):
            return other
        with mpmath.workprec(self.precision_bits + 16):
            value = to_mpf(other)
        return HighPrecReal(value, self.precision_bits, mpmath.mpf(0))

    def __add__(self, other) -> "HighPrecReal":
        o = self._coerce(other)
        with mpmath.workprec(self.precision_bits + 16):
            return self._wrap(self.value + o.value, self.error_bound + o.error_bound)

    __radd__ = __add__

    def __neg__(self) -> "HighPrecReal":
        with mpmath.workprec(self.precision_bits + 16):
            value = -self.value
        return HighPrecReal(value, self.precision_bits, self.error_bound)

    def __sub__(self, other) -> "HighPrecReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "HighPrecReal":
        return self._coerce(other) - self

    def __mul__(self, other) -> "HighPrecReal":
        o = self._coerce(other)
        with mpmath.workprec(self.precision_bits + 16):
            err = (abs(self.value) * o.error_bound + abs(o.value) * self.error_bound
                   + self.error_bound * o.error_bound)
            return self._wrap(self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "HighPrecReal":
        o = self._coerce(other)
        with mpmath.workprec(self.precision_bits + 16):
            if o.value == 0:
                raise ZeroDivisionError("division by a zero HighPrecReal")
            q = self.value / o.value
            err = (self.error_bound + abs(q) * o.error_bound) / (abs(o.value) - o.error_bound)
            return self._wrap(q, abs(err))

    def __float__(self) -> float:
        return float(self.value)

    # --- Reporting ---

    def digits(self) -> int:
        """Decimal places the error bound supports."""
        cap = int(self.precision_bits * 0.30103)
        if self.error_bound == 0:
            return cap
        with mpmath.workprec(self.precision_bits):
            d = int(mpmath.floor(-mpmath.log10(self.error_bound)))
        return max(0, min(d, cap))

    def to_decimal_string(self, places: int | None = None) -> str:
        """Round to ``places`` decimals (default: what ``digits`` supports)."""
        places = self.digits() if places is None else min(places, self.digits())
        with mpmath.workprec(self.precision_bits + 32):
            scaled = int(mpmath.nint(self.value * mpmath.mpf(10) ** places))
        sign = "-" if scaled < 0 else ""
        text = str(abs(scaled)).rjust(places + 1, "0")
        if places == 0:
            return sign + text
        return f"{sign}{text[:-places]}.{text[-places:]}"

    def error_string(self) -> str:
        return mpmath.nstr(self.error_bound, 5)

    def agrees_with(self, other: "HighPrecReal | Scalar", tolerance: Scalar) -> bool:
        o = self._coerce(other)
        with mpmath.workprec(self.precision_bits + 16):
            return abs(self.value - o.value) <= to_mpf(tolerance)

    def __str__(self) -> str:
        return self.to_decimal_string()
