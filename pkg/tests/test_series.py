"""Closed-form series sums against direct partial summation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radialpadic.numeric import ExtendedValue
from radialpadic.series import power_log_sum, stirling2, tail_to_minus_inf, tail_to_plus_inf

from oracles import brute_power_log_sum

TINY = Fraction(1, 10 ** 25)


def test_stirling_small_table():
    # classic second-kind values
    assert stirling2(0, 0) == 1
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert stirling2(6, 1) == 1
    assert stirling2(6, 6) == 1
    assert stirling2(3, 0) == 0


@pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(2, 3), Fraction(1, 5)])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("lo", [-3, 0, 2, 7])
def test_plus_tail_matches_deep_partial_sum(r, k, lo):
    exact = tail_to_plus_inf(r, k, lo)
    partial = brute_power_log_sum(r, k, lo, lo + 500)
    assert isinstance(exact, Fraction)
    assert abs(exact - partial) < TINY


@pytest.mark.parametrize("r", [Fraction(2), Fraction(3, 2), Fraction(9)])
@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("hi", [-2, 0, 5])
def test_minus_tail_matches_deep_partial_sum(r, k, hi):
    exact = tail_to_minus_inf(r, k, hi)
    partial = brute_power_log_sum(r, k, hi - 500, hi)
    assert abs(exact - partial) < TINY


def test_geometric_closed_form_identity():
    # sum_{g<=G} r^g = r^(G+1)/(r-1) for r > 1
    for r in (Fraction(2), Fraction(5, 3)):
        for g in (-4, 0, 3):
            assert tail_to_minus_inf(r, 0, g) == r ** (g + 1) / (r - 1)


def test_finite_range_exact():
    got = power_log_sum(Fraction(1, 2), 2, -3, 10)
    want = brute_power_log_sum(Fraction(1, 2), 2, -3, 10)
    assert got.value == want
    assert got.exact


def test_empty_range_is_zero():
    assert power_log_sum(Fraction(1, 2), 1, 5, 4).value == 0


def test_divergent_directions():
    up = power_log_sum(Fraction(2), 0, 0, None)
    assert not up.is_finite and float(up) > 0
    down = power_log_sum(Fraction(1, 2), 0, None, 0)
    assert not down.is_finite and float(down) > 0
    down_odd = power_log_sum(Fraction(1, 2), 1, None, 0)
    assert not down_odd.is_finite and float(down_odd) < 0
    # ratio exactly 1 with a nonzero coefficient diverges
    flat = power_log_sum(Fraction(1), 0, 0, None)
    assert not flat.is_finite


@settings(max_examples=60, deadline=None)
@given(
    num=st.integers(1, 7),
    den=st.integers(8, 15),
    k=st.integers(0, 3),
    a=st.integers(-6, 2),
    b=st.integers(3, 9),
    c=st.integers(10, 20),
)
def test_range_additivity(num, den, k, a, b, c):
    r = Fraction(num, den)
    left = power_log_sum(r, k, a, b).value
    right = power_log_sum(r, k, b + 1, c).value
    whole = power_log_sum(r, k, a, c).value
    assert left + right == whole


@settings(max_examples=40, deadline=None)
@given(num=st.integers(1, 7), den=st.integers(8, 15), k=st.integers(0, 3), edge=st.integers(-5, 5))
def test_tail_peeling(num, den, k, edge):
    # peeling one term off an infinite tail preserves the closed form exactly
    r = Fraction(num, den)
    tail = power_log_sum(r, k, edge, None).value
    peeled = power_log_sum(r, k, edge + 1, None).value
    head = (edge ** k if k else 1) * r ** edge
    assert tail == peeled + head


def test_float_ratio_falls_back_to_float():
    got = power_log_sum(0.5, 1, 0, None)
    want = float(power_log_sum(Fraction(1, 2), 1, 0, None).value)
    assert got.is_finite and not got.exact
    assert abs(float(got) - want) < 1e-13 * abs(want)


def test_huge_finite_range_uses_closed_form():
    r = Fraction(1, 2)
    got = power_log_sum(r, 1, 0, 10 ** 5)
    # the full tail minus the (numerically zero) remainder
    want = power_log_sum(r, 1, 0, None)
    assert abs(got.value - want.value) < TINY
    assert isinstance(got, ExtendedValue)
