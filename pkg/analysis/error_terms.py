"""Error exponents of the counting functions.

If the counting series grows like |t|^mu(1/2) on the critical line, the
error term is O(X^(alpha + eps)) with alpha = 1 - 1/(2(1 + mu(1/2))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Exponent = Union[int, float, Fraction]


def alpha_exponent(mu_half: Exponent) -> Exponent:
    """alpha = 1 - 1/(2(1 + mu)); exact for int and Fraction input.

    Raises:
        ValueError: mu is negative or NaN.
    """
    if isinstance(mu_half, float) and math.isnan(mu_half):
        raise ValueError("mu(1/2) must be a number")
    if mu_half < 0:
        raise ValueError(f"mu(1/2) must be >= 0, got {mu_half}")
    if isinstance(mu_half, float):
        if math.isinf(mu_half):
            return 1.0
        return 1 - 1 / (2 * (1 + mu_half))
    mu = Fraction(mu_half)
    return 1 - 1 / (2 * (1 + mu))


@dataclass(frozen=True)
class ErrorModel:
    mu_half: Exponent

    def __post_init__(self):
        alpha_exponent(self.mu_half)

    @property
    def alpha(self) -> Exponent:
        return alpha_exponent(self.mu_half)

    def bound(self, x: float) -> float:
        """X^alpha, without the epsilon."""
        return float(x) ** float(self.alpha)


CONVEXITY = ErrorModel(Fraction(1, 2))
LINDELOF = ErrorModel(Fraction(0))
