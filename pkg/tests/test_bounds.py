import math

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from prymverify.bounds import (
    LogScale,
    bost_lower,
    height_diff_bound,
    isogeny_factor_height_bound,
    kappa_log,
    ln_factorial,
    log10_factorial,
    snowden_constant_log,
)


def test_kappa_closed_form_g1():
    for h in (0.0, 0.5, 1.0):
        k = kappa_log(1, 1, h)
        assert k.level == 0
        assert abs(float(k.value) / (65536 * math.log10(14)) - 1) < 1e-12


def test_height_diff_is_half_ln_kappa():
    k = kappa_log(1, 1, 1)
    assert abs(height_diff_bound(k) - 65536 * math.log(14) / 2) < 1e-9


def test_height_diff_rejects_level_one():
    with pytest.raises(ValueError):
        height_diff_bound(kappa_log(1, 1, 1).promote())


def test_bost_dim_one():
    assert abs(bost_lower(1) + math.log(2 * math.pi**2) / 2) < 1e-12
    assert abs(bost_lower(4) - 4 * bost_lower(1)) < 1e-12


def test_composed_bound():
    expected = 1 + 65536 * math.log(14) / 2 + math.log(2 * math.pi**2) / 2
    assert abs(isogeny_factor_height_bound(1, 1, 1.0, 1) - expected) < 1e-8
    with pytest.raises(ValueError):
        isogeny_factor_height_bound(2, 1, 1.0, 3)


@settings(max_examples=200)
@given(st.floats(min_value=1e-300, max_value=1e300))
def test_round_trip(x):
    assert abs(LogScale.from_value(x).to_float() / x - 1) < 1e-12


def test_level_one_cannot_be_floated():
    with pytest.raises(OverflowError):
        LogScale(1, 5).to_float()


@given(st.floats(1.5, 1e300), st.floats(1.5, 1e300))
def test_comparison_across_levels(x, y):
    a, b = LogScale.from_value(x), LogScale.from_value(y)
    assert (a < b) == (x < y) or math.isclose(x, y, rel_tol=1e-12)
    assert (a.promote() < b) == (a < b)


def test_small_level0_below_any_level1():
    assert LogScale(0, -5) < LogScale(1, 0)
    assert LogScale(1, 0) > LogScale(0, 0.5)


@given(st.floats(-300, 300), st.floats(-300, 300))
def test_log_sum_exp(a, b):
    s = LogScale(0, a) + LogScale(0, b)
    ref = mpmath.log10(mpmath.power(10, a) + mpmath.power(10, b))
    assert abs(s.value - ref) < 1e-12 * max(1, abs(ref))


def test_multiplication_and_powers():
    a, b = LogScale(0, 3), LogScale(0, 4)
    assert (a * b).value == 7
    assert (a**3).value == 9
    big = LogScale(1, 10)
    assert abs((big**100).value - 12) < 1e-30


@pytest.mark.parametrize("g,degk,h", [(100, 10**6, 1e6), (100, 10**6, 0.0), (37, 1, 1e100), (1, 10**6, 2.0)])
def test_no_overflow(g, degk, h):
    k = kappa_log(g, degk, h)
    assert mpmath.isfinite(k.value)
    assert math.isfinite(height_diff_bound(k))
    assert math.isfinite(isogeny_factor_height_bound(g, degk, h, g))


def test_continuity_at_max_switch():
    degk = 10**4
    t = math.log(degk)
    at = height_diff_bound(kappa_log(5, degk, t))
    assert at == height_diff_bound(kappa_log(5, degk, t - 1e-9))
    assert abs(height_diff_bound(kappa_log(5, degk, t + 1e-9)) - at) < 1e-3
    # below 1 every branch gives max = 1
    assert height_diff_bound(kappa_log(2, 1, 0.3)) == height_diff_bound(kappa_log(2, 1, 1.0))


def test_stirling_against_sympy_loggamma():
    for n in (10, 1000, 10**6):
        value, err = ln_factorial(n)
        exact = sympy.N(sympy.loggamma(n + 1), 60)
        with mpmath.workdps(70):
            assert abs(value - mpmath.mpf(str(exact))) <= err


def test_snowden_empty_set():
    N = snowden_constant_log(1, [])
    assert N.level == 0
    assert abs(float(N.value) / 9.5657055186e10 - 1) < 1e-10


def test_snowden_level_one():
    N = snowden_constant_log(1, [2])
    assert N.level == 1
    with mpmath.workdps(70):
        base = log10_factorial(10**10)
        assert abs(N.value - (base + mpmath.log10(mpmath.log10(2)))) < 1e-6


def test_snowden_monotone_in_norms():
    vals = [snowden_constant_log(2, [n]) for n in (2, 3, 5, 7, 11)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert snowden_constant_log(2, [2, 3]) > snowden_constant_log(2, [3])
    assert snowden_constant_log(3, [2]) > snowden_constant_log(2, [2])


def test_snowden_validation():
    with pytest.raises(ValueError):
        snowden_constant_log(1, [1])
    with pytest.raises(ValueError):
        snowden_constant_log(0, [2])
