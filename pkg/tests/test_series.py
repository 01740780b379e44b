from fractions import Fraction

import pytest

from src.errors import InvariantError, PreconditionError, StructuralError
from src.modules.modules import free_resolution, residue_field
from src.series.analysis import (NO_SMALL_PERIOD, DeviationSeries, alpha_coefficients, alpha_identity_coefficients,
                                 ci_series_test, deviations, deviations_from_poincare, mahler_zero_pattern,
                                 odd_prime_window, poincare_from_deviations, residue_field_poincare)
from src.series.truncated import TruncatedSeries, log_derivative
from tests.conftest import make_ideal


def given(eps, horizon):
    return DeviationSeries(list(eps), "given", horizon)


def test_series_arithmetic_is_exact():
    s = TruncatedSeries([1, Fraction(1, 2), 3])
    inverse = s.inverse()
    assert (s * inverse).coefficients == [1, 0, 0]
    assert TruncatedSeries.geometric(4, 2).to_ints() == [1, 2, 4, 8, 16]
    assert s.negate_variable().coefficients == [1, Fraction(-1, 2), 3]
    assert s.shift(1).coefficients == [0, 1, Fraction(1, 2)]


def test_horizon_is_the_smaller_one():
    a = TruncatedSeries([1, 1, 1, 1], horizon=2)
    b = TruncatedSeries([1, 2, 3, 4])
    assert (a * b).horizon == 2
    assert (a + b).horizon == 2
    assert b.derivative().horizon == 2


def test_series_errors():
    with pytest.raises(PreconditionError):
        TruncatedSeries([0, 1]).inverse()
    with pytest.raises(StructuralError):
        TruncatedSeries([1, 2])[5]
    with pytest.raises(StructuralError):
        TruncatedSeries([])
    with pytest.raises(StructuralError):
        TruncatedSeries([Fraction(1, 2)]).to_ints()


def test_log_derivative_of_a_geometric_series():
    lam = log_derivative(TruncatedSeries.geometric(6, 2))
    assert lam.to_ints() == [2, 4, 8, 16, 32, 64]


def test_deviations_of_a_complete_intersection(ci_23_resolvent):
    dev = deviations(ci_23_resolvent)
    assert dev.eps == [2, 2, 0, 0, 0, 0]
    assert dev.horizon == 6
    assert dev[9] == 0
    assert poincare_from_deviations(dev, 6).to_ints() == [1, 2, 3, 4, 5, 6, 7]


def test_deviations_of_a_koszul_algebra(m_square, m_square_resolvent):
    dev = deviations(m_square_resolvent)
    assert dev.eps[:3] == [2, 3, 2]
    assert poincare_from_deviations(dev, 6).to_ints() == [1, 2, 4, 8, 16, 32, 64]
    P = residue_field_poincare(m_square, 12)
    assert P.to_ints() == [2 ** k for k in range(13)]
    assert deviations_from_poincare(P).eps[:6] == dev.eps


def test_poincare_series_of_a_hypersurface():
    P = poincare_from_deviations(given([1, 1], 10), 8)
    assert P.to_ints() == [1] * 9


def test_poincare_series_from_an_unfinished_resolution_keeps_its_horizon():
    P = residue_field_poincare(make_ideal(["x"], "x^4"), 10)
    assert P.horizon == 8
    assert P.to_ints()[:9] == [1] * 9


def test_series_beyond_the_horizon_needs_permission():
    dev = given([2, 2], 4)
    with pytest.raises(PreconditionError):
        poincare_from_deviations(dev, 8)
    assert poincare_from_deviations(dev, 8, allow_beyond_horizon=True).horizon == 4


def test_poincare_series_must_give_integral_deviations():
    with pytest.raises(InvariantError):
        deviations_from_poincare(TruncatedSeries([1, Fraction(1, 2), 0]))


def test_alpha_divisor_sums():
    dev = given([2, 3, 2, 5, 4, 7], 6)
    alpha = alpha_coefficients(dev, 12)
    assert alpha[2] == 0 and alpha[3] == 0 and alpha[5] == 0
    assert alpha[4] == -2 * dev[2]
    assert alpha[9] == 3 * dev[3]
    assert alpha[6] == -2 * dev[2] + 3 * dev[3]
    assert alpha[12] == -2 * dev[2] + 3 * dev[3] - 4 * dev[4] - 6 * dev[6]


def test_alpha_needs_half_the_order():
    with pytest.raises(PreconditionError):
        alpha_coefficients(given([2, 3], 3), 12)


def test_alpha_identity_for_a_complete_intersection():
    dev = given([2, 2], 12)
    direct = alpha_coefficients(dev, 12)
    via_series = alpha_identity_coefficients(dev, 12)
    assert via_series[1] == -dev[1]
    assert [via_series[k] for k in range(2, 13)] == [direct[k] for k in range(2, 13)]


def test_alpha_identity_for_a_koszul_algebra(m_square):
    dev = deviations_from_poincare(residue_field_poincare(m_square, 24))
    direct = alpha_coefficients(dev, 12)
    via_series = alpha_identity_coefficients(dev, 12)
    assert [via_series[k] for k in range(2, 13)] == [direct[k] for k in range(2, 13)]


def test_alpha_vanishes_exactly_at_odd_primes(m_square):
    dev = deviations_from_poincare(residue_field_poincare(m_square, 40))
    alpha = alpha_coefficients(dev, 35)
    assert odd_prime_window(alpha, 11, 35).match
    assert all(alpha[i] > 0 for i in (15, 21, 25, 27, 33, 35))
    assert mahler_zero_pattern(alpha, 4).period is None


def test_periodic_zero_pattern():
    prefix = TruncatedSeries([0 if k % 2 else 1 for k in range(21)])
    report = mahler_zero_pattern(prefix, 2)
    assert report.period == 2
    assert report.residues == [1]
    assert report.describe() == "period 2, zero residues [1]"


def test_zero_pattern_needs_a_long_prefix():
    with pytest.raises(PreconditionError):
        mahler_zero_pattern(TruncatedSeries([1, 0, 1, 0, 1]), 2)
    assert mahler_zero_pattern(TruncatedSeries([1] * 40), 3).period == 1


def test_ci_series_verdict_for_a_complete_intersection(ci_23, ci_23_resolvent, config):
    verdict = ci_series_test(ci_23, 6, config, ci_23_resolvent)
    assert verdict.is_ci_certified
    assert verdict.vanishing_index == 3
    assert verdict.mahler_flag == "not applicable"


def test_ci_series_verdict_for_the_square_of_the_maximal_ideal(m_square, m_square_resolvent, config):
    verdict = ci_series_test(m_square, 6, config, m_square_resolvent)
    assert not verdict.is_ci_certified
    assert verdict.vanishing_index is None
    assert verdict.mahler_flag == "prime-pattern zeros, no small period"
    assert verdict.mahler.describe() == NO_SMALL_PERIOD


def test_ci_series_verdict_with_a_short_window(m_square, m_square_resolvent, config):
    verdict = ci_series_test(m_square, 6, config.merged(series_order=10), m_square_resolvent)
    assert verdict.mahler_flag == "window too short"
    assert verdict.caveats


def test_ci_series_needs_a_bound_of_three(m_square, config):
    with pytest.raises(PreconditionError):
        ci_series_test(m_square, 2, config)


def test_product_formula_against_the_resolution_of_k(m_square, m_square_resolvent):
    _, betti = free_resolution(residue_field(m_square), 6, decide_end=False)
    assert poincare_from_deviations(deviations(m_square_resolvent), 6).to_ints() == betti.totals()


def test_product_formula_for_the_twisted_cubic(twisted_cubic, twisted_cubic_resolvent):
    dev = deviations(twisted_cubic_resolvent)
    assert dev.eps[:3] == [4, 3, 2]
    expected = residue_field_poincare(twisted_cubic, 5)
    assert poincare_from_deviations(dev, 5) == expected
