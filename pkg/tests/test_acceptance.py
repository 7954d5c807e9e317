"""Exit criteria, one test each; a PASS/FAIL line per criterion is printed
in the pytest terminal summary."""

import io
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import count

import numpy as np

from cantorseries import (
    E, ETA, SIGMA, XI, CantorSeries, DigitRule, Order, Status, Terminal,
    best_approx_at_depth, certified_compare, classify_prefix, compare_smarandache,
    cumulative_product, d_function, factorial_digits, half_condition,
    nested_intervals, partial_sum, resum, smarandache, verify_measure,
)
from cantorseries.cli import run
from cantorseries.kernels import BACKEND
from cantorseries.rational import from_exact_str, to_exact_str

from conftest import XI_MP, mp_fraction

RESULTS = {}
ROUND_TRIP_SEED = 20261016


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        RESULTS[number] = (ok, title, time.perf_counter() - start)


def test_1_xi_value():
    with criterion(1, "xi enclosure at eps 1/10^6 begins 1.031378, width <= 1e-6, < 1 s"):
        start = time.perf_counter()
        out = io.StringIO()
        status = run(["value", "xi", "--eps", "1/10^6"], stdout=out, stderr=io.StringIO())
        elapsed = time.perf_counter() - start
        enc = json.loads(out.getvalue())["enclosure"]
        lo, hi = from_exact_str(enc["lo"]), from_exact_str(enc["hi"])
        assert status == 0
        assert hi - lo <= Fraction(1, 10**6)
        # every number in the enclosure has decimal expansion 1.031378...
        assert Fraction(1031378, 10**6) <= lo and hi < Fraction(1031379, 10**6)
        assert mp_fraction(lo) <= XI_MP <= mp_fraction(hi)
        assert elapsed < 1.0


def test_2_eq6_exhaustive():
    with criterion(2, "|e - p/q| > 1/(D+2)! for q <= 500, 2 nearest p, depth <= 60, < 10 s"):
        start = time.perf_counter()
        report = verify_measure(E, 500, neighbors=2, refine_depth=60)
        elapsed = time.perf_counter() - start
        counts = report.counts()
        assert len(report.rows) == 500
        assert counts["fail"] == 0 and counts["undecided"] == 0 and counts["pass"] == 500
        assert all(r.depth <= 60 for r in report.rows)
        assert all(r.certified_distance_lower_bound > r.bound.rhs for r in report.rows)
        assert elapsed < 10.0


def test_3_unit_distance():
    with criterion(3, "certified min over p in {2, 3} of |e - p| > 0.28"):
        results = [certified_compare(E, p, 60, min_gap=Fraction(28, 100)) for p in (2, 3)]
        assert results[0].order is Order.GREATER and results[1].order is Order.LESS
        gap = min(r.gap for r in results)
        certificate = {
            "bound": "7/25",
            "gaps": [r.to_json() for r in results],
            "min_gap": to_exact_str(gap),
        }
        again = json.loads(json.dumps(certificate))
        assert from_exact_str(again["min_gap"]) > Fraction(28, 100) > Fraction(1, 6)


def definitional_s(q):
    # least n with q | n!, running product kept mod q
    n, fact = 1, 1 % q
    while fact:
        n += 1
        fact = fact * n % q
    return n


def test_4_identity_suite():
    with criterion(4, "S(q) = D(q, sigma) + 1 on [2, 5000]; D(q, eta) = S(q) on [1, 2000]; < 30 s"):
        start = time.perf_counter()
        oracle = {q: definitional_s(q) for q in range(1, 5001)}
        bad = [q for q in range(2, 5001) if oracle[q] != d_function(q, SIGMA) + 1]
        bad += [q for q in range(1, 2001) if d_function(q, ETA) != oracle[q]]
        bad += [q for q in range(1, 2001) if smarandache(q) != oracle[q]]
        elapsed = time.perf_counter() - start
        assert bad == []
        assert elapsed < 30.0


def test_5_nesting_and_width():
    with criterion(5, "I_{n+1} in I_n and width(I_n) B_n = 1 for e, xi, n in [1, 50]"):
        for theta in (E, XI):
            ivs = nested_intervals(theta, 51)
            for n in range(1, 51):
                assert ivs[n].issubset(ivs[n - 1])
                if theta.digit(n) != 0:
                    assert ivs[n - 1].width * cumulative_product(theta.sigma, n) == 1


def test_6_lemma_argmin():
    with criterion(6, "A_n certified argmin for e, n in [2, 12], w = 3; theta_n <= 1/2 certified"):
        half = half_condition(E, 12, refine_depth=60)
        assert half.status is Status.PASS
        assert all(r.status is Status.PASS for r in half.rows)
        for n in range(2, 13):
            report = best_approx_at_depth(E, n, window=3, refine_depth=60)
            assert report.certified
            assert len(report.margins) == 6


def test_7_factorial_round_trip():
    with criterion(7, f"factorial round trip, 1000 rationals, seed {ROUND_TRIP_SEED}, < 10 s ({BACKEND} kernels)"):
        rng = random.Random(ROUND_TRIP_SEED)
        start = time.perf_counter()
        for _ in range(1000):
            x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
            exp = factorial_digits(x, max_terms=x.denominator + 1)
            assert exp.terminated
            assert resum(exp) == x
            digits = np.fromiter(exp.digits, dtype=np.int64, count=len(exp.digits))
            # c_n for n = 2, 3, ... must lie in [0, n - 1]
            assert digits.size == 0 or (digits.min() >= 0 and np.all(digits <= np.arange(1, digits.size + 1)))
            assert exp.last_nonzero_index() <= smarandache(x.denominator)
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"{elapsed:.1f} s"


def test_8_terminal_closed_forms():
    with criterion(8, "all-max stream on sigma is exactly 1; e-prefix with zero tail from n_0 = 3 is 8/3"):
        top = CantorSeries(0, DigitRule.eventually_max(), SIGMA)
        cls = classify_prefix(top)
        assert cls.verdict is Terminal.EVENTUALLY_MAX and cls.start == 1 and cls.closed_form == 1
        previous = Fraction(-1)
        for n in range(1, 31):
            s = partial_sum(top, n)
            assert previous < s < 1
            previous = s
        assert 1 - partial_sum(top, 30) == Fraction(1, cumulative_product(SIGMA, 30))
        prefix = CantorSeries(2, DigitRule.eventually_zero([1, 1]), SIGMA)
        cls = classify_prefix(prefix)
        assert cls.verdict is Terminal.EVENTUALLY_ZERO and cls.start == 3 and cls.closed_form == Fraction(8, 3)


def test_9_smarandache_comparison():
    with criterion(9, "S-based and D-based bounds equal on [2, 1000]; q = 1 flagged D-only"):
        rows = compare_smarandache(range(1, 1001))
        assert rows[0].q == 1 and rows[0].smarandache_rhs is None and rows[0].note
        assert all(r.equal is True for r in rows[1:])
        assert len(rows) == 1000
