"""Exact counts M(K2, X) and their main terms."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Optional

import mpmath

from config.settings import PrecisionSettings
from core.enums import SeriesCase
from core.errors import CapacityError
from euler.constants import leading_constants, main_term
from euler.precision import HighPrecReal
from .sieve import CoefficientStream, coefficients
from .spec import SeriesSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CountReport:
    X: int
    case: SeriesCase
    main_term: HighPrecReal
    exact_count: Optional[int] = None
    residual: Optional[HighPrecReal] = None
    variable: str = "conductor"

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "X": self.X,
            "ordered_by": self.variable,
            "exact_count": self.exact_count,
            "main_term": self.main_term.to_decimal_string(6),
            "residual": None if self.residual is None else self.residual.to_decimal_string(6),
        }


def report_from_stream(
    stream: CoefficientStream,
    x: int,
    precision: PrecisionSettings | None = None,
) -> CountReport:
    """CountReport at X <= stream.limit, reusing an already sieved stream."""
    precision = precision or PrecisionSettings()
    if x > stream.limit:
        raise CapacityError(f"X={x} exceeds the sieved range {stream.limit}")
    spec = stream.spec
    c, d = leading_constants(
        spec.case, spec.D.value, precision.bits, precision.prime_cutoff, precision.guard_bits,
    )
    main = main_term(x, c, d)
    if not spec.is_exact:
        return CountReport(X=x, case=spec.case, main_term=main)
    exact = int(stream.partial_sum(x))
    return CountReport(X=x, case=spec.case, main_term=main, exact_count=exact, residual=exact - main)


def count(
    spec: SeriesSpec,
    x: int,
    precision: PrecisionSettings | None = None,
    workers: int = 1,
) -> CountReport:
    """M(K2, X): number of cubic fields with resolvent Q(sqrt D) and f(K) <= X.

    The exact count is absent for the main-part-only case.
    """
    if x < 1:
        raise ValueError(f"X must be >= 1, got {x}")
    stream = coefficients(spec, x, workers)
    report = report_from_stream(stream, x, precision)
    logger.info("M(%s, %d) = %s", spec.D, x, report.exact_count)
    return report


def conductor_bound(spec: SeriesSpec, x: int) -> int:
    """Largest f with |d(K2)| * f^2 <= X."""
    return isqrt(x // spec.resolvent_discriminant)


def count_by_discriminant(
    spec: SeriesSpec,
    x: int,
    precision: PrecisionSettings | None = None,
    workers: int = 1,
) -> CountReport:
    """N(K2, X) = #{K : |disc K| <= X} = M(K2, floor(sqrt(X / |d(K2)|))).

    The main term is reported in Y = sqrt(X / |d(K2)|), not at the floor.
    """
    if x < 1:
        raise ValueError(f"X must be >= 1, got {x}")
    y = conductor_bound(spec, x)
    precision = precision or PrecisionSettings()
    c, d = leading_constants(
        spec.case, spec.D.value, precision.bits, precision.prime_cutoff, precision.guard_bits,
    )
    with mpmath.workprec(precision.bits + precision.guard_bits):
        y_real = mpmath.sqrt(mpmath.mpf(x) / spec.resolvent_discriminant)
    main = main_term(y_real, c, d)
    exact = None
    residual = None
    if spec.is_exact and y >= 1:
        exact = int(coefficients(spec, y, workers).partial_sum(y))
    elif spec.is_exact:
        exact = 0
    if exact is not None:
        residual = exact - main
    return CountReport(
        X=x, case=spec.case, main_term=main, exact_count=exact, residual=residual,
        variable="discriminant",
    )
