from fractions import Fraction
from math import gcd

import numpy as np
import pytest
import sympy

from arith.conditions import PrimeCondition
from arith.discriminants import fundamental_discriminants, is_squarefree
from core.enums import SeriesCase
from core.errors import CapacityError, InvalidDiscriminantError
from resolvent.mirror import scholz_gate
from series.oracles import (
    cube_free_parts, cyclic_field_count, oracle_array, oracle_cyclic, oracle_pure_cubic,
    pure_cubic_conductor,
)
from series.sieve import coefficients, constituent_stream, in_support
from series.spec import EulerFactor, build_spec, cyclic_spec, pure_cubic_spec


# --- Routing ---

@pytest.mark.parametrize("d,case", [
    (1, SeriesCase.CYCLIC),
    (-3, SeriesCase.PURE_CUBIC),
    (-4, SeriesCase.EXACT_CASE5),
    (-23, SeriesCase.ASYMPTOTIC_ONLY),
    (5, SeriesCase.ASYMPTOTIC_ONLY),
])
def test_build_spec_routes(d, case):
    assert build_spec(d).case is case


def test_build_spec_rejects_non_fundamental():
    with pytest.raises(InvalidDiscriminantError):
        build_spec(8 * 9)


def test_asymptotic_only_weight():
    assert build_spec(5).constituents[0].weight == Fraction(1, 6)
    assert build_spec(-23).constituents[0].weight == Fraction(1, 2)
    assert build_spec(-23).constant == 0
    assert build_spec(-4).constant == Fraction(-1, 2)


def test_euler_factor_validation():
    with pytest.raises(ValueError):
        EulerFactor(Fraction(1), PrimeCondition.all_primes(), generic=(2, 1))


def test_local_factor_override():
    factor = cyclic_spec().constituents[0]
    assert factor.local_factor(3) == (1, 0, 2)
    assert factor.local_factor(7) == (1, 2)
    assert factor.local_factor(5) == (1,)
    assert "p mod 3" in factor.describe()


# --- Sieve ---

def _brute_force(factor: EulerFactor, limit: int) -> list:
    out = [0] * (limit + 1)
    for n in range(1, limit + 1):
        value = 1
        for p, e in sympy.factorint(n).items():
            coeffs = factor.local_factor(p)
            value *= coeffs[e] if e < len(coeffs) else 0
        out[n] = value
    return out


@pytest.mark.parametrize("spec_d", [1, -3, -4, 5])
def test_constituent_stream_matches_brute_force(spec_d):
    for factor in build_spec(spec_d).constituents:
        stream = constituent_stream(factor, 2000)
        assert list(stream) == _brute_force(factor, 2000)


def test_trivial_local_factor_zeroes_multiples():
    # 2 = 2 (mod 3): local factor 1, so b vanishes on every even n
    stream = constituent_stream(cyclic_spec().constituents[0], 20)
    assert stream[2] == 0 and stream[4] == 0 and stream[14] == 0
    assert list(stream[1:10]) == [1, 0, 0, 0, 0, 0, 2, 0, 2]


def test_exact_case_with_inert_primes_sieves_cleanly():
    stream = coefficients(build_spec(-4), 200)
    assert stream.is_exact and stream.denominator == 1
    assert all(v >= 0 for _, v in stream.nonzero())


def test_sieve_is_worker_independent():
    spec = pure_cubic_spec()
    one = coefficients(spec, 300_000, workers=1).values
    four = coefficients(spec, 300_000, workers=4).values
    assert np.array_equal(one, four)


def test_cyclic_count_to_100():
    stream = coefficients(cyclic_spec(), 100)
    assert stream[7] == 1 and stream[9] == 1
    assert stream[63] == 2 and stream[91] == 2
    assert stream.partial_sum(100) == 16


def test_pure_cubic_small_coefficients():
    stream = coefficients(pure_cubic_spec(), 100)
    # Q(cbrt 2): f = 6, Q(cbrt 3): f = 9, Q(cbrt 10): f = 10
    assert stream[2] == 0 and stream[3] == 0
    assert stream[6] == 1 and stream[9] == 1 and stream[10] == 1


@pytest.mark.parametrize("d", [1, -3, -4, -7, -20, -47])
def test_exact_coefficients_are_counts(d):
    stream = coefficients(build_spec(d), 20_000)
    a = stream.values
    assert stream.denominator == 1
    assert a[1] == 0
    assert (a >= 0).all()
    for n in np.flatnonzero(a)[:200]:
        assert in_support(stream.spec, int(n))


def test_gated_discriminants_integral():
    gated = [d for d in fundamental_discriminants(200, sign=-1) if d != -3 and scholz_gate(d)]
    for d in gated[:10]:
        assert coefficients(build_spec(d), 5000).denominator == 1


def test_asymptotic_only_keeps_denominator():
    stream = coefficients(build_spec(5), 1000)
    assert stream.denominator > 1
    assert stream.values[1] == 0
    n = next(n for n, _ in stream.nonzero())
    assert isinstance(stream[n], Fraction)


def test_sieve_capacity():
    with pytest.raises(CapacityError):
        coefficients(cyclic_spec(), 2**62)
    with pytest.raises(ValueError):
        coefficients(cyclic_spec(), 0)


def test_stream_index_bounds():
    stream = coefficients(cyclic_spec(), 50)
    with pytest.raises(IndexError):
        stream[51]
    assert len(stream) == 50
    assert stream.as_dict() == {7: 1, 9: 1, 13: 1, 19: 1, 31: 1, 37: 1, 43: 1}


# --- Oracles ---

def test_cube_free_parts():
    assert cube_free_parts(12) == (3, 2)
    assert cube_free_parts(16) == (2, 1)
    assert pure_cubic_conductor(2) == 6
    assert pure_cubic_conductor(3) == 9
    assert pure_cubic_conductor(10) == 10
    with pytest.raises(ValueError):
        pure_cubic_conductor(27)


def test_cyclic_field_count():
    assert cyclic_field_count(7) == 1
    assert cyclic_field_count(9) == 1
    assert cyclic_field_count(63) == 2
    assert cyclic_field_count(27) == 0
    assert cyclic_field_count(5) == 0


def test_pure_cubic_oracle_by_direct_enumeration():
    limit = 300
    direct = {}
    # one field per m = a * b^2 with a > b, a and b squarefree and coprime
    for a in range(2, limit + 1):
        for b in range(1, min(a, limit // a + 1)):
            if gcd(a, b) != 1 or not (is_squarefree(a) and is_squarefree(b)):
                continue
            f = pure_cubic_conductor(a * b * b)
            if f <= limit:
                direct[f] = direct.get(f, 0) + 1
    assert oracle_pure_cubic(limit) == dict(sorted(direct.items()))


@pytest.mark.parametrize("limit", [10, 5000, 100_000])
def test_series_matches_oracles(limit):
    cyclic = coefficients(cyclic_spec(), limit).values
    assert np.array_equal(cyclic, oracle_array(oracle_cyclic(limit), limit))
    pure = coefficients(pure_cubic_spec(), limit).values
    assert np.array_equal(pure, oracle_array(oracle_pure_cubic(limit), limit))


@pytest.mark.slow
def test_series_matches_oracles_to_a_million():
    limit = 10**6
    assert np.array_equal(coefficients(cyclic_spec(), limit).values,
                          oracle_array(oracle_cyclic(limit), limit))
    assert np.array_equal(coefficients(pure_cubic_spec(), limit).values,
                          oracle_array(oracle_pure_cubic(limit), limit))
