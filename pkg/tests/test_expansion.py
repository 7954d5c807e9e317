from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cantorseries import (
    ETA, SIGMA, SIGMA5, BaseSequenceSpec, CantorSeries, DigitRule, E,
    cantor_digits, enclosure, factorial_digits, factorial_value, partial_sum,
    resum, smarandache,
)
from cantorseries.expansion import DigitExpansion


def test_factorial_examples():
    half = factorial_digits(Fraction(1, 2))
    assert (half.a0, half.digits, half.terminated) == (0, (1,), True)
    two_thirds = factorial_digits(Fraction(2, 3))
    assert (two_thirds.a0, two_thirds.digits, two_thirds.terminated) == (0, (1, 1), True)
    assert two_thirds.factorial_digits == (0, 1, 1)


def test_e_enclosure_midpoints_give_constant_digits():
    for depth in (10, 20, 30):
        mid = enclosure(E, depth).midpoint
        exp = factorial_digits(mid, depth + 1)
        assert exp.a0 == 2
        # a_n = c_{n+1} = 1 up to the depth of the enclosure
        assert exp.digits[:depth] == (1,) * depth


def test_cantor_examples():
    exp = cantor_digits(Fraction(33, 32), SIGMA5)
    assert (exp.a0, exp.digits, exp.terminated) == (1, (1,), True)
    exp = cantor_digits(Fraction(8, 3), SIGMA)
    assert (exp.a0, exp.digits, exp.terminated) == (2, (1, 1), True)
    exp = cantor_digits(0, SIGMA5)
    assert (exp.a0, exp.digits, exp.terminated) == (0, (), True)


def test_negative_and_decimal_input():
    exp = factorial_digits("-0.25")
    assert exp.a0 == -1
    assert resum(exp) == Fraction(-1, 4)
    assert all(c >= 0 for c in exp.digits)


def test_non_termination_is_reported():
    exp = factorial_digits(Fraction(1, 97), max_terms=10)
    assert not exp.terminated and len(exp.digits) == 9
    exp = cantor_digits(Fraction(1, 7), SIGMA5, max_terms=3)
    assert not exp.terminated and len(exp.digits) == 3


def test_resum_examples():
    assert resum(DigitExpansion(2, (1, 1), SIGMA, True)) == Fraction(8, 3)
    assert resum(DigitExpansion(0, (), SIGMA, True)) == 0
    assert factorial_value([0, 1, 1]) == Fraction(2, 3)
    assert resum(DigitExpansion(0, (0, 1, 1), ETA, True)) == Fraction(2, 3)
    with pytest.raises(Exception):
        resum(DigitExpansion(0, (1, 1, 1), BaseSequenceSpec.explicit([2, 3]), True))


rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))


@settings(max_examples=200, deadline=None)
@given(rationals)
def test_factorial_round_trip(x):
    exp = factorial_digits(x, x.denominator + 1)
    assert exp.terminated
    assert resum(exp) == x
    for n, c in enumerate(exp.digits, start=2):
        assert 0 <= c <= n - 1
    assert exp.last_nonzero_index() <= smarandache(x.denominator)


@settings(max_examples=200, deadline=None)
@given(st.builds(Fraction, st.integers(-10**4, 10**4), st.integers(1, 10**4)),
       st.sampled_from([SIGMA5, BaseSequenceSpec.successor_power(2), BaseSequenceSpec.explicit([2, 6, 10, 3, 7, 4, 9, 30])]))
def test_cantor_round_trip_and_bounds(x, sigma):
    exp = cantor_digits(x, sigma, max_terms=8)
    for n, a in enumerate(exp.digits, start=1):
        assert 0 <= a <= sigma.base_at(n) - 1
    if exp.terminated:
        assert resum(exp) == x
        series = CantorSeries(exp.a0, DigitRule.eventually_zero(exp.digits), sigma)
        assert partial_sum(series, len(exp.digits)) == x
    else:
        # the remainder after the last step lies in [0, 1)
        rem = (x - resum(exp)) * sigma_product(sigma, len(exp.digits))
        assert 0 < rem < 1


def sigma_product(sigma, n):
    out = 1
    for k in range(1, n + 1):
        out *= sigma.base_at(k)
    return out


@settings(max_examples=100, deadline=None)
@given(rationals)
def test_terminated_expansion_is_canonical(x):
    # greedy output stops at the last nonzero digit instead of a max tail
    exp = factorial_digits(x, x.denominator + 1)
    assert exp.terminated
    if exp.digits:
        assert exp.digits[-1] != 0
