"""Asymptotic constants of the counting functions and their main terms."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

import mpmath

from arith.conditions import PrimeCondition
from arith.discriminants import Discriminant
from arith.kronecker import kronecker
from arith.lvalues import l_value_at_1
from core.enums import SeriesCase
from core.errors import InvalidDiscriminantError, PureCubicCaseError
from resolvent.mirror import mirror_data, proof_prefactor
from .gamma import euler_gamma
from .precision import HighPrecReal
from .products import EulerProductSpec, euler_product, prime_log_sum

logger = logging.getLogger(__name__)

CYCLIC_LITERAL = "0.1585282583961420602835078203575"
PURE_CUBIC_C_LITERAL = "0.066907733301378371291841632984295637501344"
PURE_CUBIC_D_LITERAL = "3.45022279783059196279071191967111041826885"

# 1 - 2/(p(p+1)) = (1 + x - 2x^2) / (1 + x), x = 1/p
SPLIT_DENSITY = ((1, 1, -2), (1, 1))
# 1 - 3/p^2 + 2/p^3
CUBIC_LOCAL = ((1, 0, -3, 2), (1,))


def _exact(value, bits: int) -> HighPrecReal:
    return HighPrecReal.from_value(value, bits)


@lru_cache(maxsize=4)
def constant_cyclic(bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32) -> HighPrecReal:
    """C(Q) = 11 sqrt(3) / (36 pi) * prod_{p = 1 (3)} (1 - 2/(p(p+1)))."""
    product = euler_product(
        EulerProductSpec(*SPLIT_DENSITY, PrimeCondition.congruent(3, [1]), label="cyclic density"),
        bits, prime_cutoff, guard_bits,
    )
    with mpmath.workprec(bits + guard_bits):
        prefactor = 11 * mpmath.sqrt(3) / (36 * mpmath.pi)
    value = product * _exact(prefactor, bits)
    logger.info("C(cyclic) = %s", mpmath.nstr(value.value, 25))
    return value


@lru_cache(maxsize=4)
def constants_pure_cubic(
    bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32,
) -> Tuple[HighPrecReal, HighPrecReal]:
    """(C, D) for K2 = Q(sqrt(-3)).

    C = 7/30 * prod_p (1 - 3/p^2 + 2/p^3)
    D = 2 gamma - (16/35) log 3 + 6 sum_p log(p) / (p^2 + p - 2)

    The sum runs over all primes, 3 included; 1/(p^2+p-2) is
    x^2 / (1 + x - 2x^2) in x = 1/p.
    """
    product = euler_product(
        EulerProductSpec(*CUBIC_LOCAL, PrimeCondition.all_primes(), label="pure cubic C"),
        bits, prime_cutoff, guard_bits,
    )
    c = product * Fraction(7, 30)

    log_sum = prime_log_sum((0, 0, 1), (1, 1, -2), None, bits, prime_cutoff, guard_bits)
    with mpmath.workprec(bits + guard_bits):
        log3_term = mpmath.mpf(16) / 35 * mpmath.log(3)
    d = euler_gamma(bits) * 2 - _exact(log3_term, bits) + log_sum * 6
    logger.info("C(pure) = %s, D(pure) = %s", mpmath.nstr(c.value, 25), mpmath.nstr(d.value, 25))
    return c, d


def _general_disc(d: "int | Discriminant", allow_cyclic: bool) -> Discriminant:
    disc = Discriminant.of(d)
    if disc.is_pure_cubic_case:
        raise PureCubicCaseError()
    if disc.is_cyclic_case and not allow_cyclic:
        raise InvalidDiscriminantError(1, "D = 1 is the cyclic case; use constant_cyclic")
    return disc


@lru_cache(maxsize=2048)
def constant_general(
    d: int, bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32,
) -> HighPrecReal:
    """C(Q(sqrt D)) from the mirror field's L-value.

    3^r2(D) * l3 * L(chi_D', 1) / pi^2
        * prod_{p | D'} (1 - 1/(p+1)) * prod_{(D'/p) = 1} (1 - 2/(p(p+1)))

    Raises:
        PureCubicCaseError: D = -3.
        InvalidDiscriminantError: D = 1 or D not fundamental.
    """
    disc = _general_disc(d, allow_cyclic=False)
    mirror = mirror_data(disc)
    l_value = l_value_at_1(mirror.Dprime, bits, prime_cutoff, guard_bits)

    # 1 - 1/(p+1) = 1/(1 + x)
    ramified = euler_product(
        EulerProductSpec((1,), (1, 1), PrimeCondition.divides(mirror.Dprime), label="ramified"),
        bits, prime_cutoff, guard_bits,
    )
    split = euler_product(
        EulerProductSpec(*SPLIT_DENSITY, PrimeCondition.kronecker_equals(mirror.Dprime, 1), label="split density"),
        bits, prime_cutoff, guard_bits,
    )
    with mpmath.workprec(bits + guard_bits):
        prefactor = 3 ** disc.r2 * mpmath.mpf(mirror.ell3.numerator) / mirror.ell3.denominator / mpmath.pi**2
    return _exact(prefactor, bits) * l_value * ramified * split


@lru_cache(maxsize=2048)
def constant_general_alt(
    d: int, bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32,
) -> HighPrecReal:
    """C from the regularised product over p != 3.

    g * 3^(r2(D)-2) * L3(1) * prod_{p != 3} (1 + a(p)/p)(1 - 1/p), with
    a(p) = 2 for p split in K2' and 0 otherwise. The degree-1 terms
    only converge conditionally, so each factor is multiplied by
    (1 - chi(p)/p) and L(chi_D', 1) = prod_p (1 - chi(p)/p)^-1 is put
    back in front:

        split      (1 + 2x)(1 - x)(1 - x) = 1 - 3x^2 + 2x^3
        inert      (1 - x)(1 + x)         = 1 - x^2
        ramified   (1 - x)
        p = 3      only (1 - chi(3)/3) remains

    D = 1 is allowed (g = 3) and reproduces the cyclic constant.
    """
    disc = _general_disc(d, allow_cyclic=True)
    mirror = mirror_data(disc)
    dprime = mirror.Dprime
    l_value = l_value_at_1(dprime, bits, prime_cutoff, guard_bits)

    split = euler_product(
        EulerProductSpec(*CUBIC_LOCAL, PrimeCondition.kronecker_equals(dprime, 1, exclude=[3]),
                         label="split, regularised"),
        bits, prime_cutoff, guard_bits,
    )
    inert = euler_product(
        EulerProductSpec((1, 0, -1), (1,), PrimeCondition.kronecker_equals(dprime, -1, exclude=[3]),
                         label="inert, regularised"),
        bits, prime_cutoff, guard_bits,
    )
    ramified = euler_product(
        EulerProductSpec((1, -1), (1,), PrimeCondition.divides(dprime, exclude=[3]), label="ramified"),
        bits, prime_cutoff, guard_bits,
    )
    at_three = 1 - Fraction(kronecker(dprime, 3), 3)
    prefactor = proof_prefactor(mirror) * at_three
    return l_value * split * inert * ramified * prefactor


def leading_constants(
    case: SeriesCase, d: int, bits: int = 256, prime_cutoff: int = 1000, guard_bits: int = 32,
) -> Tuple[HighPrecReal, Optional[HighPrecReal]]:
    """(C, D) of the main term for a series case; D only for pure cubics."""
    if case is SeriesCase.CYCLIC:
        return constant_cyclic(bits, prime_cutoff, guard_bits), None
    if case is SeriesCase.PURE_CUBIC:
        return constants_pure_cubic(bits, prime_cutoff, guard_bits)
    return constant_general(d, bits, prime_cutoff, guard_bits), None


def main_term(x: int | Fraction | mpmath.mpf, c: HighPrecReal, d: Optional[HighPrecReal] = None) -> HighPrecReal:
    """C * X, or C * X * (log X + D - 1) when the pole is double."""
    bits = c.precision_bits
    with mpmath.workprec(bits + 32):
        xv = mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator
        if d is None:
            return c * _exact(xv, bits)
        log_x_minus_1 = mpmath.log(xv) - 1
    return c * _exact(xv, bits) * (d + _exact(log_x_minus_1, bits))
