"""Empirical residuals M(X) - main term at a list of checkpoints."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import mpmath

from config.settings import PrecisionSettings
from core.errors import InvalidDiscriminantError
from euler.precision import HighPrecReal
from series.counting import report_from_stream
from series.sieve import coefficients
from series.spec import SeriesSpec

logger = logging.getLogger(__name__)

ENVELOPE_EXPONENT = 0.55


@dataclass(frozen=True)
class ResidualRow:
    X: int
    exact_count: int
    main_term: HighPrecReal
    residual: HighPrecReal
    per_quarter_power: float
    per_quarter_power_log: Optional[float]  # None at X = 1 (log X = 0)

    HEADER = ("X", "exact_count", "main_term", "residual",
              "residual/X^(1/4)", "residual/(X^(1/4) log X)")

    def as_row(self) -> list:
        return [
            self.X,
            self.exact_count,
            self.main_term.to_decimal_string(6),
            self.residual.to_decimal_string(6),
            f"{self.per_quarter_power:.6f}",
            "" if self.per_quarter_power_log is None else f"{self.per_quarter_power_log:.6f}",
        ]

    def within_envelope(self, exponent: float = ENVELOPE_EXPONENT) -> bool:
        return abs(float(self.residual)) <= self.X ** exponent


def residual_profile(
    spec: SeriesSpec,
    checkpoints: Sequence[int],
    precision: PrecisionSettings | None = None,
    workers: int = 1,
) -> List[ResidualRow]:
    """One row per checkpoint from a single sieve up to the largest X.

    Raises:
        InvalidDiscriminantError: ``spec`` carries no exact count.
        ValueError: checkpoints are empty, non-positive or not ascending.
    """
    if not spec.is_exact:
        raise InvalidDiscriminantError(spec.D.value, "residuals need an exact series, not the main part only")
    points = list(checkpoints)
    if not points or points[0] < 1 or any(b <= a for a, b in zip(points, points[1:])):
        raise ValueError(f"checkpoints must be positive and strictly ascending: {points}")

    stream = coefficients(spec, points[-1], workers)
    rows = []
    for x in points:
        report = report_from_stream(stream, x, precision)
        res = report.residual
        with mpmath.workprec(64):
            quarter = mpmath.mpf(x) ** 0.25
            per_q = float(res.value / quarter)
            per_ql = None if x == 1 else float(res.value / (quarter * mpmath.log(x)))
        rows.append(ResidualRow(x, report.exact_count, report.main_term, res, per_q, per_ql))
        logger.info("X=%d residual=%s (%.4f X^1/4)", x, mpmath.nstr(res.value, 8), per_q)
    return rows
