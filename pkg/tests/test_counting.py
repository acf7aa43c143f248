from fractions import Fraction

import pytest

from analysis.error_terms import CONVEXITY, LINDELOF, ErrorModel, alpha_exponent
from analysis.residuals import residual_profile
from core.enums import SeriesCase
from core.errors import CapacityError, InvalidDiscriminantError
from series.counting import conductor_bound, count, count_by_discriminant, report_from_stream
from series.sieve import coefficients
from series.spec import build_spec, cyclic_spec, pure_cubic_spec


def test_cyclic_count(precision):
    report = count(cyclic_spec(), 100, precision)
    assert report.exact_count == 16
    assert report.case is SeriesCase.CYCLIC
    assert report.to_dict()["ordered_by"] == "conductor"
    assert abs(float(report.residual) - (16 - 100 * 0.15852825839614206)) < 1e-9


def test_asymptotic_only_count_has_no_exact_value(precision):
    report = count(build_spec(-23), 1000, precision)
    assert report.exact_count is None
    assert report.residual is None
    assert float(report.main_term) > 0


def test_count_by_discriminant(precision):
    spec = pure_cubic_spec()
    # |disc| = 3 f^2 <= 3 * 100^2 + 2 means f <= 100
    x = 3 * 100**2 + 2
    assert conductor_bound(spec, x) == 100
    by_disc = count_by_discriminant(spec, x, precision)
    by_cond = count(spec, 100, precision)
    assert by_disc.exact_count == by_cond.exact_count
    assert by_disc.variable == "discriminant"
    assert conductor_bound(cyclic_spec(), 99) == 9


def test_count_by_discriminant_below_first_field(precision):
    report = count_by_discriminant(build_spec(-4), 3, precision)
    assert report.exact_count == 0


def test_report_beyond_stream(precision):
    stream = coefficients(cyclic_spec(), 100)
    with pytest.raises(CapacityError):
        report_from_stream(stream, 101, precision)


def test_count_rejects_nonpositive(precision):
    with pytest.raises(ValueError):
        count(cyclic_spec(), 0, precision)


# --- Error exponents ---

def test_alpha_exponents():
    assert alpha_exponent(Fraction(1, 2)) == Fraction(2, 3)
    assert alpha_exponent(0) == Fraction(1, 2)
    assert alpha_exponent(0.5) == pytest.approx(2 / 3)
    assert alpha_exponent(float("inf")) == 1.0
    assert CONVEXITY.alpha == Fraction(2, 3)
    assert LINDELOF.alpha == Fraction(1, 2)
    assert LINDELOF.bound(10**4) == pytest.approx(100.0)


@pytest.mark.parametrize("mu", [-1, -0.5, float("nan")])
def test_alpha_rejects_bad_mu(mu):
    with pytest.raises(ValueError):
        alpha_exponent(mu)
    with pytest.raises(ValueError):
        ErrorModel(mu)


def test_alpha_is_monotone():
    values = [alpha_exponent(Fraction(k, 10)) for k in range(0, 30)]
    assert values == sorted(values)
    assert all(Fraction(1, 2) <= a < 1 for a in values)


# --- Residuals ---

def test_residual_profile(precision):
    rows = residual_profile(cyclic_spec(), [1, 100, 10_000], precision)
    assert [r.X for r in rows] == [1, 100, 10_000]
    assert rows[0].per_quarter_power_log is None
    assert rows[1].exact_count == 16
    assert rows[2].within_envelope()
    assert len(rows[2].as_row()) == 6


def test_residual_profile_rejects_bad_input(precision):
    with pytest.raises(InvalidDiscriminantError):
        residual_profile(build_spec(5), [100], precision)
    with pytest.raises(ValueError):
        residual_profile(cyclic_spec(), [100, 10], precision)
    with pytest.raises(ValueError):
        residual_profile(cyclic_spec(), [], precision)


@pytest.mark.slow
def test_residuals_stay_in_envelope(precision):
    for spec in (pure_cubic_spec(), cyclic_spec()):
        for row in residual_profile(spec, [10**4, 10**5, 10**6], precision):
            assert row.within_envelope()
            assert abs(row.per_quarter_power_log) <= 1.0
