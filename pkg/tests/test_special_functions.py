import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaborfock.special_functions import (RangeError, eval_s, growth_ratio_scan, log_abs_s, log_s,
                                         log_mittag_leffler_half, mittag_leffler_half,
                                         mittag_leffler_half_asymptotic, mittag_leffler_half_remainder,
                                         mittag_leffler_half_series,
                                         s_zero_distance, s_zeros)

from oracles import mlf_mp, mlf_remainder_mp, s_mp

# values frozen from 250-digit mpmath evaluations
MLF_FROZEN = [
    (1.0, 5.008980080762283466),
    (-10.0, 0.05614099274382258586),
    (2 + 3j, -0.08133907992862736045 + 0.12108616246299844894j),
    (-4 + 1j, 0.1298881599308405762 + 0.03077886081705882882j),
    (12j, 2.8946403116483e-63 + 0.04718077870701884246j),
]
S_FROZEN = [
    (np.exp(0.25j * np.pi), -2.3012989023072948735 + 2.3012989023072948735j),
    (3.3 - 1.7j, -1332342.1613725946076 - 21598715.150142306785j),
]
EXCESS_TIMES_X = {6.0: -0.55665940680323013, 8.0: -0.55988132960704742, 10.0: -0.56140992743822586}

finite_z = st.complex_numbers(max_magnitude=6.0, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("z,expected", S_FROZEN)
def test_s_frozen_values(z, expected):
    assert eval_s(z) == pytest.approx(expected, rel=1e-13)


def test_s_at_origin_and_near():
    assert eval_s(0) == -math.pi / 2
    for z in (1e-3, 5e-3j, 0.009 * np.exp(0.3j), 0.011):
        assert eval_s(z) == pytest.approx(s_mp(z), rel=1e-12)


def test_s_zeros_list():
    assert s_zeros(0.5) == []
    zs = s_zeros(2.1)
    s2 = math.sqrt(2)
    assert sorted(zs, key=lambda w: (w.real, w.imag)) == sorted(
        [1, -1, s2, -s2, 1j * s2, -1j * s2, 2, -2, 2j, -2j], key=lambda w: (w.real, w.imag))
    # boundary excluded: radius exactly 2
    assert 2 not in s_zeros(2.0)


@pytest.mark.parametrize("w", s_zeros(12.0))
def test_s_vanishes_at_listed_zeros(w):
    # zeros are simple: |s(w)| tiny relative to |s'(w)| ~ pi |w| * O(1)
    assert abs(eval_s(w)) <= 1e-12 * (1 + abs(w) ** 3)
    assert s_zero_distance(w) < 1e-15 * (1 + abs(w))


def test_s_has_no_other_zeros_on_grid():
    # argument principle on |z| = R: winding number equals the listed count
    for R in (3.1, 5.3, 7.05):
        th = 2 * np.pi * np.arange(200_000) / 200_000
        lg = log_s(R * np.exp(1j * th))
        winding = np.sum(np.angle(np.exp(1j * np.diff(np.append(lg.imag, lg.imag[0]))))) / (2 * np.pi)
        # z^-2 has a removable pole cancelled by sin's double zero at 0 -> no net contribution
        assert round(winding) == len(s_zeros(R))


def test_s_zero_distance_brute():
    rng = np.random.default_rng(0)
    z = rng.uniform(-8, 8, 300) + 1j * rng.uniform(-8, 8, 300)
    zs = np.array(s_zeros(15.0))
    brute = np.abs(z[:, None] - zs[None, :]).min(axis=1)
    assert np.allclose(s_zero_distance(z), brute, atol=1e-14)


def test_s_large_argument_log_form():
    z = 22 * np.exp(0.25j * np.pi)
    with pytest.raises(RangeError):
        eval_s(z)
    # log|s| ~ (pi/2) r^2 - log 2 + log|1 - z^-2|
    expected = 0.5 * math.pi * 484 - math.log(2) + math.log(abs(1 - z ** -2))
    assert log_abs_s(z) == pytest.approx(expected, rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(finite_z)
def test_s_even_and_conjugate_symmetric(z):
    a = eval_s(z)
    assert eval_s(-z) == pytest.approx(a, rel=1e-12, abs=1e-12)
    assert eval_s(np.conj(z)) == pytest.approx(np.conj(a), rel=1e-12, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(finite_z)
def test_s_matches_mpmath(z):
    assert eval_s(z) == pytest.approx(s_mp(z), rel=1e-10, abs=1e-12)


# ---------------------------------------------------------------- E_{1/2}

@pytest.mark.parametrize("z,expected", MLF_FROZEN)
def test_mlf_frozen_values(z, expected):
    got = mittag_leffler_half(z)
    assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected))


def test_mlf_switch_agreement():
    # both evaluators on |z| = 3 at 64 angles
    z = 3.0 * np.exp(2j * np.pi * np.arange(64) / 64)
    series = mittag_leffler_half_series(z)
    far = np.array([mlf_mp(w, dps=60) for w in z])
    assert np.max(np.abs(series - far) / np.maximum(1, np.abs(far))) < 1e-7
    # the large-argument branch just outside the switch radius agrees too
    z2 = 3.0000001 * np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.max(np.abs(mittag_leffler_half(z2) - series) / np.maximum(1, np.abs(series))) < 1e-6


@pytest.mark.parametrize("radius", [0.5, 2.0, 2.9, 3.5, 6.0, 12.0, 20.0])
def test_mlf_against_mpmath(radius):
    z = radius * np.exp(2j * np.pi * (np.arange(16) + 0.37) / 16)
    got = log_mittag_leffler_half(z)
    for w, g in zip(z, got):
        ref = mlf_mp(w, dps=120 + int(radius * radius))
        # compare in log space: relative error of the value
        assert abs(np.exp(g - np.log(ref)) - 1) < 1e-9


def test_mlf_excess_asymptotics():
    for x, frozen in EXCESS_TIMES_X.items():
        assert mittag_leffler_half_remainder(x).real * x == pytest.approx(frozen, rel=1e-12)
        # the exponential part carries the log: log E(x) = x^2 + log 2 to double precision
        assert log_mittag_leffler_half(x).real == pytest.approx(x * x + math.log(2), rel=1e-15)
        assert abs(mittag_leffler_half(-x)) * x == pytest.approx(-frozen, rel=1e-12)


def test_mlf_asymptotic_form():
    for z in (7 + 1j, -9 + 2j, 8j, 5 * np.exp(0.2j)):
        exact = mlf_mp(z, dps=200)
        approx = complex(mittag_leffler_half_asymptotic(z, terms=10))
        assert abs(approx - exact) <= 1e-4 * max(1, abs(exact))


@pytest.mark.parametrize("z", [0.5, -2.0, 2 + 1j, -1 + 2.5j, 4 - 1j, -7 + 3j])
def test_mlf_remainder_consistent(z):
    expected = mlf_remainder_mp(z)
    assert mittag_leffler_half_remainder(z) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_mlf_range():
    with pytest.raises(RangeError):
        mittag_leffler_half(31)
    with pytest.raises(RangeError):
        mittag_leffler_half(27.0)  # e^{729} overflows
    assert np.isfinite(log_mittag_leffler_half(27.0).real)


@settings(max_examples=100, deadline=None)
@given(st.complex_numbers(max_magnitude=12.0, allow_nan=False, allow_infinity=False))
def test_mlf_conjugate_symmetric(z):
    a = mittag_leffler_half(z)
    assert mittag_leffler_half(np.conj(z)) == pytest.approx(np.conj(a), rel=1e-12, abs=1e-14)


# ---------------------------------------------------------------- growth ratio

def test_growth_ratio_bounds():
    rep = growth_ratio_scan([5, 10, 20], theta_count=256, epsilon=0.3)
    assert 0.3 < rep.min_ratio and rep.max_ratio < 1.0
    assert rep.excluded > 0
    assert len(rep.rows()) == 3 * 256


def test_growth_ratio_diagonal():
    rep = growth_ratio_scan([10, 20, 30], thetas=[math.pi / 4])
    assert np.allclose(rep.ratios, 0.5, rtol=0.02)


def test_growth_ratio_stable_under_refinement():
    a = growth_ratio_scan([5, 10, 20], theta_count=256)
    b = growth_ratio_scan([5, 10, 20], theta_count=512)
    assert abs(a.min_ratio - b.min_ratio) < 0.05
    assert abs(a.max_ratio - b.max_ratio) < 0.05


def test_growth_ratio_validation():
    with pytest.raises(ValueError):
        growth_ratio_scan([1.0])
    with pytest.raises(ValueError):
        growth_ratio_scan([5.0], theta_count=32)
    with pytest.raises(ValueError):
        growth_ratio_scan([5.0], epsilon=0)
