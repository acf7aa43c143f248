"""Parsed command-line request, validated before any computation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple, Union

from core.enums import OutputFormat, Verb

ORACLE_DISCRIMINANTS = (1, -3)


def parse_mu(text: str) -> Union[int, float, Fraction]:
    """'1/2' -> Fraction, '0' -> int, '0.5' -> float."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_checkpoints(text: str) -> Tuple[int, ...]:
    return tuple(int(float(part)) if "e" in part.lower() else int(part)
                 for part in text.split(",") if part.strip())


@dataclass
class Command:
    verb: Verb
    d: Optional[int] = None
    limit: Optional[int] = None
    precision_bits: int = 256
    prime_cutoff: int = 1000
    format: OutputFormat = OutputFormat.TEXT
    oracle: bool = False
    by_discriminant: bool = False
    quick: bool = False
    mu: Optional[str] = None
    checkpoints: Tuple[int, ...] = field(default_factory=tuple)
    workers: int = 1
    report_dir: Optional[Path] = None

    def validate(self) -> List[str]:
        """Return list of validation error strings (empty = valid)."""
        errors = []
        needs_d = {Verb.CONSTANTS, Verb.COUNT, Verb.SERIES, Verb.RESIDUALS}
        if self.verb in needs_d and self.d is None:
            errors.append(f"{self.verb.value}: --d is required.")
        if self.verb in (Verb.COUNT, Verb.SERIES):
            if self.limit is None:
                errors.append(f"{self.verb.value}: --limit is required.")
            elif self.limit < 1:
                errors.append("--limit must be >= 1.")
        if self.oracle:
            if self.verb is not Verb.COUNT:
                errors.append("--oracle only applies to count.")
            elif self.d not in ORACLE_DISCRIMINANTS:
                errors.append("--oracle is available for D = 1 (cyclic) and D = -3 (pure cubic) only.")
            elif self.by_discriminant:
                errors.append("--oracle compares conductors; drop --by-discriminant.")
        if self.verb is Verb.ALPHA:
            if self.mu is None:
                errors.append("alpha: --mu is required.")
            else:
                try:
                    mu = parse_mu(self.mu)
                    if mu != mu or mu < 0:
                        errors.append("--mu must be a non-negative number.")
                except (ValueError, ZeroDivisionError):
                    errors.append(f"--mu: cannot parse {self.mu!r}.")
        if self.verb is Verb.RESIDUALS:
            pts = self.checkpoints
            if not pts:
                errors.append("residuals: --checkpoints is required.")
            elif pts[0] < 1 or any(b <= a for a, b in zip(pts, pts[1:])):
                errors.append("--checkpoints must be positive and strictly ascending.")
        if self.precision_bits < 96:
            errors.append("--precision must be at least 96 bits.")
        if self.prime_cutoff < 100:
            errors.append("--prime-cutoff must be >= 100.")
        if self.workers < 1:
            errors.append("--workers must be >= 1.")
        return errors
