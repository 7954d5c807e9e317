import json
from fractions import Fraction
from math import factorial

import mpmath
import pytest

from cantorseries import (
    E, SIGMA, XI, BoundRule, CantorSeries, DigitRule, PreconditionNotCertified,
    Status, UndecidedAtDepth, best_approx_at_depth, compare_smarandache, d_function,
    half_condition, measure_bound, recheck_row, smarandache, verify_measure,
)

from conftest import E_MP, XI_MP, mp_fraction


def test_half_condition_e():
    report = half_condition(E, 10)
    assert not report.fast_path_passed and report.fast_path_first_failure == 2
    assert report.status is Status.PASS
    assert [r.n for r in report.rows] == list(range(2, 11))
    row2 = report.rows[0]
    theta2 = 6 * (E_MP - mpmath.mpf(8) / 3)
    assert mp_fraction(row2.enclosure.lo) <= theta2 <= mp_fraction(row2.enclosure.hi)
    assert abs(theta2 - mpmath.mpf("0.3097")) < 1e-4


def test_half_condition_xi_fast_path():
    report = half_condition(XI, 10)
    assert report.fast_path_passed and report.tail_guaranteed
    assert all(r.method == "sufficient_condition" for r in report.rows)
    assert report.status is Status.PASS


def test_half_condition_fails_for_max_tail():
    top = CantorSeries(0, DigitRule.eventually_max(), SIGMA)
    report = half_condition(top, 2)
    assert report.status is Status.FAIL
    assert report.rows[0].enclosure.lo == 1


def test_half_condition_undecided_raises():
    # digits stop at n = 4, leaving theta_2 in [1/2, 1/2 + 1/20]
    theta = CantorSeries(0, DigitRule.explicit([1, 1, 2, 0]), SIGMA)
    with pytest.raises(UndecidedAtDepth) as info:
        half_condition(theta, 2)
    assert info.value.report.status is Status.UNDECIDED
    row = info.value.report.rows[0]
    assert row.enclosure.lo == Fraction(1, 2) and row.enclosure.hi == Fraction(11, 20)


def test_measure_bound_examples():
    b = measure_bound(E, 7)
    assert (b.d_value, b.rhs, b.rule) == (6, Fraction(1, factorial(8)), BoundRule.EQ6_FOR_E)
    b = measure_bound(XI, 7776)
    assert (b.d_value, b.rhs, b.rule) == (2, Fraction(1, 7962624), BoundRule.FOR_XI)
    assert measure_bound(E, 2).applicable   # D = 1 is fine for e


def test_measure_bound_general_rule():
    digits = [1, 1, 0] + [1] * 40
    theta = CantorSeries(0, DigitRule.explicit(digits), SIGMA)
    b = measure_bound(theta, 6)            # D = 2, a_3 = 0
    assert b.rule is BoundRule.EQ5_GENERAL and b.rhs == 0 and b.note
    b = measure_bound(theta, 2)            # D = 1
    assert b.rule is BoundRule.NOT_APPLICABLE and not b.applicable
    b = measure_bound(theta, 24)           # D = 3, a_4 = 1
    assert b.rhs == Fraction(1, factorial(5))


def brute_argmin(value_mp, b_n, center, window):
    cands = range(center - window, center + window + 1)
    return min(cands, key=lambda m: abs(value_mp - mpmath.mpf(m) / b_n))


def test_best_approx_e_depth_2():
    report = best_approx_at_depth(E, 2, 3)
    assert report.a_n == 16 and report.b_n == 6
    assert report.certified and report.in_proposition_range
    assert brute_argmin(E_MP, 6, 16, 3) == 16


def test_best_approx_xi_depth_1():
    report = best_approx_at_depth(XI, 1, 3)
    assert report.a_n == 33 and report.b_n == 32
    assert not report.in_proposition_range
    assert brute_argmin(XI_MP, 32, 33, 3) == 33
    assert abs(XI_MP - mpmath.mpf(33) / 32 - mpmath.mpf("0.000128")) < 1e-5


def test_best_approx_tie_at_half():
    # theta_1 = 1/3 + 2/12 = 1/2 exactly: A_1 and A_1 + 1 are equally good
    theta = CantorSeries(0, DigitRule.eventually_zero([1, 1, 2]), SIGMA)
    report = best_approx_at_depth(theta, 1, 2)
    margins = dict(report.margins)
    assert margins[report.a_n + 1] == 0
    assert report.certified


def test_best_approx_precondition():
    top = CantorSeries(0, DigitRule.eventually_max(), SIGMA)
    with pytest.raises(PreconditionNotCertified):
        best_approx_at_depth(top, 2, 3)


def test_verify_measure_e_small():
    report = verify_measure(E, 60)
    assert report.verdict is Status.PASS
    row = report.rows[0]
    assert row.q == 1 and row.tested == (2, 3)
    assert row.certified_distance_lower_bound > Fraction(28, 100) > Fraction(1, 6) == row.bound.rhs


def test_verify_measure_agrees_with_mpmath_scan():
    report = verify_measure(E, 150)
    for row in report.rows:
        q = row.q
        center = int(mpmath.floor(q * E_MP))
        best = min(abs(E_MP - mpmath.mpf(p) / q) for p in range(center - 3, center + 4))
        assert best > mp_fraction(row.bound.rhs)
        assert row.verdict is Status.PASS


def test_verify_measure_xi():
    report = verify_measure(XI, 100)
    assert report.verdict is Status.PASS
    assert report.counts()["pass"] == 100


def test_verify_measure_detects_rational():
    theta = CantorSeries(2, DigitRule.eventually_zero([1, 1]), SIGMA)   # exactly 8/3
    report = verify_measure(theta, 6)
    rows = {r.q: r for r in report.rows}
    assert rows[3].verdict is Status.FAIL
    assert report.verdict is Status.FAIL


def test_report_rechecks_from_json():
    report = verify_measure(E, 80, neighbors=3)
    data = json.loads(json.dumps(report.to_json()))
    assert all(recheck_row(row) for row in data["rows"])
    assert report.to_csv().splitlines()[0].startswith("q,D,rule,rhs")


def test_refinement_is_monotone():
    shallow = verify_measure(XI, 60, refine_depth=2)
    deep = verify_measure(XI, 60, refine_depth=30)
    for a, b in zip(shallow.rows, deep.rows):
        if a.verdict is Status.PASS:
            assert b.verdict is Status.PASS
        assert b.verdict is not Status.FAIL


def test_compare_smarandache_examples():
    rows = {r.q: r for r in compare_smarandache([1, 2, 6])}
    assert rows[6].smarandache_rhs == rows[6].d_rhs == Fraction(1, 24)
    assert rows[2].smarandache_rhs == rows[2].d_rhs == Fraction(1, 6)
    assert rows[1].smarandache_rhs is None and rows[1].d_rhs == Fraction(1, 6)
    assert rows[1].equal is None and rows[1].note


def test_eq6_matches_eq3_up_to_5000():
    for q in range(2, 5001):
        assert d_function(q, SIGMA) + 2 == smarandache(q) + 1
