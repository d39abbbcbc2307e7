import numpy as np
import pytest
from scipy.integrate import quad

from epiage import AgeProfile, DomainError, ParameterError, as_profile, profile_sum


def test_constant_profile_evaluation():
    p = AgeProfile.constant(0.0125)
    assert p(37.0) == 0.0125
    assert p(0.0) == 0.0125


def test_table_midpoint_interpolation():
    p = AgeProfile.from_table([(0.0, 0.0), (10.0, 1.0)])
    assert p(5.0) == 0.5


def test_table_clamps_beyond_last_knot():
    p = AgeProfile.from_table([(0.0, 0.0), (10.0, 1.0)])
    assert p(25.0) == 1.0
    assert p(10.0) == 1.0


def test_negative_age_rejected():
    p = AgeProfile.constant(1.0)
    with pytest.raises(DomainError):
        p(-1.0)
    with pytest.raises(DomainError):
        p.cumulative(-0.5)


def test_invalid_tables_rejected():
    with pytest.raises(ParameterError):
        AgeProfile.from_table([(0.0, 1.0), (0.0, 2.0)])  # not increasing
    with pytest.raises(ParameterError):
        AgeProfile.from_table([(0.0, -1.0), (1.0, 2.0)])  # negative value
    with pytest.raises(ParameterError):
        AgeProfile([], [])


def test_cumulative_exact_on_linear_segments():
    p = AgeProfile.from_table([(0.0, 0.01), (100.0, 0.03)])
    # trapezoid of a linear function is exact
    assert p.cumulative(100.0) == pytest.approx(2.0, abs=1e-14)
    assert p.cumulative(50.0) == pytest.approx(0.5 * (0.01 + 0.02) * 50, abs=1e-14)
    # beyond the table the value is clamped
    assert p.cumulative(120.0) == pytest.approx(2.0 + 20 * 0.03, abs=1e-13)


def test_cumulative_matches_adaptive_quadrature(rng):
    knots = np.sort(rng.uniform(0.0, 80.0, 5))
    knots[0] = 0.0
    values = rng.uniform(0.0, 3.0, 5)
    p = AgeProfile(knots, values)
    for a in (0.3, 7.7, 45.0, 79.0, 95.0):
        oracle, _ = quad(p, 0.0, a, limit=200, points=list(knots[knots < a]))
        assert p.cumulative(a) == pytest.approx(oracle, abs=1e-9)


def test_cumulative_with_offset_first_knot():
    # constant continuation before the first knot
    p = AgeProfile.from_table([(10.0, 2.0), (20.0, 4.0)])
    assert p(0.0) == 2.0
    assert p.cumulative(10.0) == pytest.approx(20.0)
    assert p.cumulative(15.0) == pytest.approx(20.0 + 0.5 * (2.0 + 3.0) * 5.0)


def test_as_profile_coercions():
    assert as_profile(2.5)(1.0) == 2.5
    assert as_profile([(0, 1.0), (5, 2.0)])(5.0) == 2.0
    p = AgeProfile.constant(1.0)
    assert as_profile(p) is p


def test_profile_sum_exact_on_knot_union():
    p = AgeProfile.from_table([(0.0, 1.0), (10.0, 3.0)])
    q = AgeProfile.from_table([(0.0, 2.0), (4.0, 0.0), (10.0, 2.0)])
    s = profile_sum(p, q)
    for a in np.linspace(0, 12, 23):
        assert s(a) == pytest.approx(p(a) + q(a), abs=1e-14)


def test_profiles_are_immutable():
    p = AgeProfile.constant(1.0)
    with pytest.raises(AttributeError):
        p.values = np.array([2.0])
