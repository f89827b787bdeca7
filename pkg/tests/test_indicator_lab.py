import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaborfock.catalog import ExpQuadratic, Monomial, One, Product, QuotientByLinear, SFunction
from gaborfock.indicator_lab import (DirectionSet, IndicatorProfile, convexity_floor_check,
                                     envelope_integral, estimate_indicator, h_envelope, jensen_check,
                                     level_inequality_check, levin_density, local_maxima,
                                     random_direction_set)

TWO_PI = 2 * math.pi
LADDER = [10, 12.5, 15, 17.5, 20, 22.5, 25]


def envelope_integral_oracle(angles):
    """Closed form: each gap of width w contributes (pi/2) sin w."""
    a = np.sort(np.asarray(angles))
    gaps = np.diff(np.append(a, a[0] + TWO_PI))
    return 0.5 * math.pi * float(np.sum(np.sin(gaps)))


@pytest.fixture(scope="module")
def s_profile():
    return estimate_indicator(SFunction(), 256, LADDER)


def test_indicator_of_s(s_profile):
    target = 0.5 * math.pi * np.abs(np.sin(2 * s_profile.thetas))
    assert np.max(np.abs(s_profile.h_values - target)) <= 0.05
    assert levin_density(s_profile) == pytest.approx(2 / math.pi, rel=0.02)


def test_indicator_exact_cases():
    c = 0.7 + 0.4j
    prof = estimate_indicator(ExpQuadratic(c), 128, [5, 10, 15])
    expected = np.real(c * np.exp(2j * prof.thetas))
    assert np.max(np.abs(prof.h_values - expected)) < 1e-12
    one = estimate_indicator(One(), 64, [5, 10])
    assert np.all(one.h_values == 0)
    mono = estimate_indicator(Monomial(4), 64, [10, 20])
    assert np.allclose(mono.h_values, 4 * math.log(20) / 400)


def test_indicator_validation():
    with pytest.raises(ValueError):
        estimate_indicator(One(), 32, [5, 10])
    with pytest.raises(ValueError):
        estimate_indicator(One(), 64, [5])
    with pytest.raises(ValueError):
        IndicatorProfile.from_values(np.zeros(10))


def test_indicator_avoids_zeros(s_profile):
    # the axis angles sit on zeros of s: they must have been nudged off
    axes = np.isclose(np.sin(2 * s_profile.thetas), 0, atol=1e-12)
    assert np.all(s_profile.eval_thetas[axes] != s_profile.thetas[axes])
    assert np.all(np.isfinite(s_profile.h_values))


def test_levin_density_trapezoid():
    prof = IndicatorProfile.from_values(0.5 * math.pi * np.abs(np.sin(2 * TWO_PI * np.arange(4096) / 4096)))
    assert levin_density(prof) == pytest.approx(2 / math.pi, rel=1e-6)


# ---------------------------------------------------------------- Jensen

def test_jensen_s():
    small = jensen_check(SFunction(), 0.5)
    assert abs(small.lhs) <= 1e-6 and abs(small.rhs) <= 1e-6
    res = jensen_check(SFunction(), 1.2)
    assert res.lhs == pytest.approx(0.36464311358790917841, abs=1e-14)
    assert res.difference <= 1e-3


@pytest.mark.parametrize("r", [0.9, 1.7, 2.3, 3.05, 4.1])
def test_jensen_s_radii(r):
    assert jensen_check(SFunction(), r).difference <= 1e-6


def test_jensen_refusals():
    with pytest.raises(ValueError):
        jensen_check(Monomial(2), 1.0)  # F(0) = 0
    with pytest.raises(ValueError):
        jensen_check(SFunction(), 2.0)  # zero on the circle
    with pytest.raises(ValueError):
        jensen_check(SFunction(), 0.0)


def test_jensen_product():
    F = Product((SFunction(), ExpQuadratic(0.3)))
    assert jensen_check(F, 2.5).difference < 1e-9


# ---------------------------------------------------------------- envelope

def test_four_directions():
    d = DirectionSet.of([0, math.pi / 2, math.pi, 1.5 * math.pi])
    assert envelope_integral(d) == pytest.approx(TWO_PI, abs=1e-4)
    chk = level_inequality_check(d)
    assert chk.passes is True and isinstance(chk.integral, float)
    assert h_envelope(d, math.pi / 4) == pytest.approx(0, abs=1e-15)
    assert h_envelope(d, math.pi) == pytest.approx(math.pi / 2)


def test_envelope_matches_s_indicator():
    d = DirectionSet.of([math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4])
    th = np.linspace(0, TWO_PI, 777)
    assert np.allclose(h_envelope(d, th), 0.5 * math.pi * np.abs(np.sin(2 * th)), atol=1e-14)


def test_direction_set_validation():
    with pytest.raises(ValueError):
        DirectionSet.of([])
    with pytest.raises(ValueError):
        DirectionSet.of([1.0, 0.5])
    with pytest.raises(ValueError):
        DirectionSet.of([0.0, 7.0])
    with pytest.raises(ValueError):
        level_inequality_check(DirectionSet.of([0.0, 2.0]))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_envelope_integral_oracle(seed):
    d = random_direction_set(np.random.default_rng(seed))
    assert envelope_integral(d) == pytest.approx(envelope_integral_oracle(d.angles), abs=1e-10)
    assert level_inequality_check(d).passes


def test_random_sets_are_admissible():
    rng = np.random.default_rng(12345)
    for _ in range(100):
        d = random_direction_set(rng)
        assert d.admissible() and 4 <= len(d.angles) <= 12


# ---------------------------------------------------------------- convexity

def test_local_maxima():
    h = np.zeros(64)
    h[10] = 1.0
    # the spike smooths to a three-point plateau 9..11, reported at its left end
    assert local_maxima(h) == [9]
    h = np.zeros(64)
    h[20:25] = 1.0
    # smoothing turns a plateau of 5 into a plateau of 3 starting at 21
    assert local_maxima(h) == [21]
    assert local_maxima(np.ones(64)) == []


def test_convexity_floor(s_profile):
    assert convexity_floor_check(s_profile) >= -0.05
    prof = estimate_indicator(ExpQuadratic(1.0), 128, [5, 10])
    assert convexity_floor_check(prof) == pytest.approx(0, abs=1e-12)
    assert convexity_floor_check(estimate_indicator(One(), 64, [5, 10])) == 0.0


def test_quotient_indicator_same_as_s():
    q = estimate_indicator(QuotientByLinear(SFunction(), 1.0), 256, LADDER)
    target = 0.5 * math.pi * np.abs(np.sin(2 * q.thetas))
    assert np.max(np.abs(q.h_values - target)) <= 0.05
