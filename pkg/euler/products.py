"""Prime-restricted Euler products and log-weighted prime sums.

A product prod_{p in S} F(1/p) with F = num/den, F(0) = 1, is evaluated
as the exact product over p <= P0 times

    exp( sum_{k>=2} c_k * sum_{p in S, p > P0} p^-k ),

where log F(x) = sum c_k x^k. The c_k come from Newton's identities on
the power sums of the inverse roots of num and den, so they stay exact
rationals. c_1 != 0 means the product diverges (or converges only
conditionally) and is rejected; such products must have their degree-1
part split off against an L-value by the caller.

Log-weighted sums sum_{p in S} log(p) G(1/p) with G = num/den, G(x) =
O(x^2), expand G as a power series instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2
from typing import List, Sequence, Tuple

import mpmath

from arith.conditions import PrimeCondition
from arith.discriminants import prime_divisors
from core.enums import ConditionKind
from core.errors import DivergentProductError
from .precision import HighPrecReal, to_mpf
from .prime_zeta import PrimeZetaEngine, engine_for

logger = logging.getLogger(__name__)

Poly = Tuple[Fraction, ...]


def _poly(coeffs: Sequence) -> Poly:
    return tuple(Fraction(c) for c in coeffs)


def power_sums(poly: Poly, count: int) -> List[Fraction]:
    """s_k = sum r_i^k for poly(x) = prod (1 - r_i x), k = 1..count."""
    a = list(poly) + [Fraction(0)] * max(0, count + 1 - len(poly))
    sums: List[Fraction] = []
    for k in range(1, count + 1):
        s = -k * a[k]
        for i in range(1, k):
            s -= a[i] * sums[k - i - 1]
        sums.append(s)
    return sums


def log_coefficients(num: Poly, den: Poly, count: int) -> List[Fraction]:
    """c_1..c_count with log(num/den) = sum c_k x^k."""
    sn = power_sums(num, count)
    sd = power_sums(den, count)
    return [(sd[k] - sn[k]) / (k + 1) for k in range(count)]


def series_coefficients(num: Poly, den: Poly, count: int) -> List[Fraction]:
    """g_0..g_count with num/den = sum g_k x^k."""
    g: List[Fraction] = []
    for k in range(count + 1):
        v = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            v -= den[i] * g[k - i]
        g.append(v / den[0])
    return g


def root_bound(poly: Poly) -> float:
    """Cauchy bound on |r_i| for poly(x) = prod (1 - r_i x)."""
    if len(poly) <= 1:
        return 1.0
    return 1.0 + max(abs(float(c)) for c in poly[1:])


@dataclass(frozen=True)
class EulerProductSpec:
    """A product (or log-weighted sum) over primes meeting ``condition``."""
    numerator: Poly
    denominator: Poly = (Fraction(1),)
    condition: PrimeCondition = PrimeCondition.all_primes()
    log_weight: bool = False
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "numerator", _poly(self.numerator))
        object.__setattr__(self, "denominator", _poly(self.denominator))
        if not self.denominator or self.denominator[0] != 1:
            raise ValueError("denominator must have constant term 1")
        if self.log_weight:
            g = series_coefficients(self.numerator, self.denominator, 1)
            if g[0] or g[1]:
                raise DivergentProductError(
                    f"{self.label or 'log-weighted sum'}: terms of degree < 2 diverge"
                )
        else:
            if not self.numerator or self.numerator[0] != 1:
                raise ValueError("factor must satisfy F(0) = 1")
            if self.condition.kind is not ConditionKind.DIVIDES:
                c1 = log_coefficients(self.numerator, self.denominator, 1)[0]
                if c1:
                    raise DivergentProductError(
                        f"{self.label or 'Euler product'}: degree-1 log coefficient {c1} "
                        "needs an L-function split"
                    )

    def factor_at(self, p: int) -> mpmath.mpf:
        x = mpmath.mpf(1) / p
        num = mpmath.fsum(to_mpf(c) * x**i for i, c in enumerate(self.numerator))
        den = mpmath.fsum(to_mpf(c) * x**i for i, c in enumerate(self.denominator))
        return num / den


def _truncation(spec: EulerProductSpec, engine: PrimeZetaEngine) -> int:
    """Number of k-terms after which the geometric tail drops below eps."""
    rho = root_bound(spec.denominator) if spec.log_weight else max(
        root_bound(spec.numerator), root_bound(spec.denominator))
    p1 = engine.first_tail_prime
    if p1 <= 2 * rho:
        raise ValueError(f"prime cutoff {engine.prime_cutoff} too small for root bound {rho}")
    degree = len(spec.numerator) + len(spec.denominator)
    scale = log2(degree * (p1 + 1) * max(1.0, float(sum(abs(c) for c in spec.numerator))))
    return max(2, ceil((engine.working_bits + scale) / log2(p1 / rho)) + 1)


def _exact_primes(spec: EulerProductSpec, engine: PrimeZetaEngine) -> List[int]:
    if spec.condition.kind is ConditionKind.DIVIDES:
        return [p for p in prime_divisors(spec.condition.d) if p not in spec.condition.exclude]
    return [p for p in engine.small_primes if spec.condition.holds(p)]


def euler_product(
    spec: EulerProductSpec,
    bits: int = 256,
    prime_cutoff: int = 1000,
    guard_bits: int = 32,
) -> HighPrecReal:
    """Evaluate ``spec`` to ``bits`` of precision.

    ``error_bound`` is the geometric k-tail estimate plus rounding, a
    heuristic bound.

    Raises:
        DivergentProductError: the factor's log has a degree-1 term.
    """
    engine = engine_for(bits, prime_cutoff, guard_bits)
    exact = _exact_primes(spec, engine)
    divides = spec.condition.kind is ConditionKind.DIVIDES

    with mpmath.workprec(engine.working_bits):
        if spec.log_weight:
            value = mpmath.fsum(mpmath.log(p) * spec.factor_at(p) for p in exact)
        else:
            value = mpmath.mpf(1)
            for p in exact:
                value *= spec.factor_at(p)

        error = mpmath.mpf(0)
        if not divides:
            count = _truncation(spec, engine)
            if spec.log_weight:
                coeffs = series_coefficients(spec.numerator, spec.denominator, count)
                tail = mpmath.fsum(
                    to_mpf(coeffs[k]) * engine.conditional_sum(k, spec.condition, log_weight=True)
                    for k in range(2, count + 1) if coeffs[k]
                )
                value += tail
                error = engine.eps * (1 + abs(value))
            else:
                coeffs = log_coefficients(spec.numerator, spec.denominator, count)
                exponent = mpmath.fsum(
                    to_mpf(coeffs[k - 1]) * engine.conditional_sum(k, spec.condition)
                    for k in range(2, count + 1) if coeffs[k - 1]
                )
                value *= mpmath.exp(exponent)
                error = engine.eps * abs(value) * (1 + count)
            logger.debug("%s: %d k-terms above P0=%d", spec.label or "product", count, prime_cutoff)

    return HighPrecReal.from_value(value, bits, error=error)


def prime_log_sum(
    numerator: Sequence,
    denominator: Sequence,
    condition: PrimeCondition | None = None,
    bits: int = 256,
    prime_cutoff: int = 1000,
    guard_bits: int = 32,
) -> HighPrecReal:
    """sum over primes of log(p) * num(1/p)/den(1/p)."""
    spec = EulerProductSpec(
        numerator, denominator, condition or PrimeCondition.all_primes(), log_weight=True,
    )
    return euler_product(spec, bits, prime_cutoff, guard_bits)
