from fractions import Fraction

import mpmath
import pytest

from arith.conditions import PrimeCondition
from arith.kronecker import kronecker
from arith.primes import primes_up_to
from core.errors import DivergentProductError
from euler.gamma import GAMMA_LITERAL, euler_gamma
from euler.precision import HighPrecReal, to_mpf
from euler.prime_zeta import PrimeZetaEngine, engine_for, mobius, restricted_prime_zeta
from euler.products import (
    EulerProductSpec, euler_product, log_coefficients, power_sums, prime_log_sum,
    series_coefficients,
)

BITS = 128
CUTOFF = 1000


def close(value, expected, tol="1e-30", bits=BITS) -> bool:
    with mpmath.workprec(bits + 32):
        v = value.value if isinstance(value, HighPrecReal) else value
        return abs(v - expected) < mpmath.mpf(tol)


# --- Exact series algebra ---

def test_log_coefficients_of_one_minus_x():
    coeffs = log_coefficients((Fraction(1), Fraction(-1)), (Fraction(1),), 5)
    assert coeffs == [Fraction(-1, k) for k in range(1, 6)]


def test_log_coefficients_of_quotient():
    # log((1 + x) / (1 - x)) = 2 (x + x^3/3 + x^5/5 + ...)
    coeffs = log_coefficients((Fraction(1), Fraction(1)), (Fraction(1), Fraction(-1)), 5)
    assert coeffs == [2, 0, Fraction(2, 3), 0, Fraction(2, 5)]


def test_power_sums():
    # 1 - 3x + 2x^2 = (1 - x)(1 - 2x)
    assert power_sums((Fraction(1), Fraction(-3), Fraction(2)), 3) == [3, 5, 9]


def test_series_coefficients_geometric():
    assert series_coefficients((Fraction(1),), (Fraction(1), Fraction(-1)), 4) == [1] * 5


def test_degree_one_products_are_rejected():
    with pytest.raises(DivergentProductError):
        EulerProductSpec((1, 2))
    with pytest.raises(DivergentProductError):
        EulerProductSpec((0, 1), (1,), log_weight=True)
    # finite products over p | d need no convergence
    EulerProductSpec((1, -1), condition=PrimeCondition.divides(12))


def test_bad_factors_are_rejected():
    with pytest.raises(ValueError):
        EulerProductSpec((2, 0, 1))
    with pytest.raises(ValueError):
        EulerProductSpec((1, 0, 1), (2,))


# --- Products against closed forms ---

def test_product_over_all_primes_is_inverse_zeta2():
    value = euler_product(EulerProductSpec((1, 0, -1)), BITS, CUTOFF)
    with mpmath.workprec(BITS + 32):
        expected = 6 / mpmath.pi**2
    assert close(value, expected)


def test_character_split_reassembles_zeta2():
    split = euler_product(EulerProductSpec((1, 0, -1), condition=PrimeCondition.kronecker_equals(-4, 1)),
                          BITS, CUTOFF)
    inert = euler_product(EulerProductSpec((1, 0, -1), condition=PrimeCondition.kronecker_equals(-4, -1)),
                          BITS, CUTOFF)
    total = split * inert * Fraction(3, 4)
    with mpmath.workprec(BITS + 32):
        expected = 6 / mpmath.pi**2
    assert close(total, expected)


def test_catalan_from_character_products():
    split = euler_product(EulerProductSpec((1, 0, -1), condition=PrimeCondition.kronecker_equals(-4, 1)),
                          BITS, CUTOFF)
    inert = euler_product(EulerProductSpec((1, 0, 1), condition=PrimeCondition.kronecker_equals(-4, -1)),
                          BITS, CUTOFF)
    with mpmath.workprec(BITS + 32):
        expected = 1 / +mpmath.catalan
    assert close(split * inert, expected)


def test_congruence_condition_uses_character():
    by_class = euler_product(EulerProductSpec((1, 0, -1), condition=PrimeCondition.congruent(3, [1])),
                             BITS, CUTOFF)
    by_char = euler_product(EulerProductSpec((1, 0, -1), condition=PrimeCondition.kronecker_equals(-3, 1)),
                            BITS, CUTOFF)
    assert close(by_class, by_char.value)


def test_divides_product_is_finite():
    value = euler_product(EulerProductSpec((1,), (1, 1), PrimeCondition.divides(12, exclude=[3])), BITS, CUTOFF)
    with mpmath.workprec(BITS + 32):
        assert close(value, mpmath.mpf(2) / 3)


def test_log_weighted_sum_is_zeta_log_derivative():
    # sum_p log(p) / (p^2 - 1) = -zeta'(2) / zeta(2)
    value = prime_log_sum((0, 0, 1), (1, 0, -1), None, BITS, CUTOFF)
    with mpmath.workprec(BITS + 32):
        expected = -mpmath.zeta(2, 1, 1) / mpmath.zeta(2)
    assert close(value, expected)


def test_cutoff_too_small_for_root_bound():
    with pytest.raises(ValueError):
        euler_product(EulerProductSpec((1, 0, -1000)), BITS, 100)


# --- Prime zeta ---

def test_mobius():
    assert [mobius(m) for m in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_prime_zeta_matches_mpmath():
    for k in (2, 3, 5):
        value = restricted_prime_zeta(k, bits=BITS, prime_cutoff=CUTOFF)
        with mpmath.workprec(BITS + 32):
            expected = mpmath.primezeta(k)
        assert close(value, expected), k


def test_restricted_prime_zeta_against_direct_sum():
    cond = PrimeCondition.kronecker_equals(-3, 1)
    value = restricted_prime_zeta(3, cond, bits=BITS, prime_cutoff=CUTOFF)
    primes = primes_up_to(10**6)
    selected = primes[cond.mask(primes)]
    with mpmath.workprec(80):
        direct = mpmath.fsum(mpmath.mpf(int(p)) ** -3 for p in selected)
    # primes above 10^6 contribute less than 10^-12
    assert close(value, direct, tol="1e-12")


def test_restricted_prime_zeta_over_divisors():
    value = restricted_prime_zeta(2, PrimeCondition.divides(30), bits=BITS)
    with mpmath.workprec(BITS + 32):
        assert close(value, to_mpf(Fraction(1, 4) + Fraction(1, 9) + Fraction(1, 25)))


def test_restricted_prime_zeta_over_divisors_honours_exclude():
    value = restricted_prime_zeta(2, PrimeCondition.divides(30, exclude=[3]), bits=BITS)
    with mpmath.workprec(BITS + 32):
        assert close(value, to_mpf(Fraction(1, 4) + Fraction(1, 25)))


def test_character_sum_at_one_matches_partial_sums():
    # sum_{1000 < p <= 10^6} chi_12(p)/p, the rest of the tail is O(1e-3)
    engine = engine_for(BITS, CUTOFF)
    tail = engine.character_sum_at_one(12)
    with mpmath.workprec(64):
        partial = mpmath.fsum(mpmath.mpf(kronecker(12, int(p))) / int(p)
                              for p in primes_up_to(10**6) if p > CUTOFF)
        assert abs(tail - partial) < mpmath.mpf("1e-2")


def test_engine_rejects_cutoff():
    with pytest.raises(ValueError):
        PrimeZetaEngine(BITS, prime_cutoff=1)
    with pytest.raises(ValueError):
        engine_for(BITS, CUTOFF).prime_sum(1)


def test_engines_are_shared():
    assert engine_for(BITS, CUTOFF) is engine_for(BITS, CUTOFF)
    assert engine_for(BITS, CUTOFF).first_tail_prime == 1009


# --- Euler's constant ---

def test_gamma_matches_library():
    gamma = euler_gamma(256)
    with mpmath.workprec(300):
        assert abs(gamma.value - +mpmath.euler) < mpmath.ldexp(1, -250)
        assert abs(gamma.value - mpmath.mpf(GAMMA_LITERAL)) < mpmath.mpf("1e-45")


# --- HighPrecReal ---

def test_high_prec_arithmetic():
    a = HighPrecReal.from_value(Fraction(1, 3), BITS)
    b = a * 3 - 1
    with mpmath.workprec(BITS + 16):
        assert abs(b.value) < mpmath.ldexp(1, -(BITS - 4))
    assert b.error_bound > 0
    assert (a / Fraction(1, 3)).agrees_with(1, mpmath.ldexp(1, -(BITS - 4)))


def test_high_prec_subtraction_keeps_precision():
    a = HighPrecReal.from_value(Fraction(1, 3), BITS)
    tiny = mpmath.ldexp(1, -(BITS - 4))
    with mpmath.workprec(BITS + 16):
        two_thirds = mpmath.mpf(2) / 3
        assert abs((-a).value + a.value) == 0
        assert abs((1 - a).value - two_thirds) < tiny
        assert abs((a - Fraction(1, 3)).value) < tiny


def test_high_prec_decimal_string():
    x = HighPrecReal.from_value(Fraction(1, 8), BITS)
    assert x.to_decimal_string(5) == "0.12500"
    assert (-x).to_decimal_string(3) == "-0.125"


def test_high_prec_rejects_low_precision():
    with pytest.raises(ValueError):
        HighPrecReal.from_value(1, 53)
