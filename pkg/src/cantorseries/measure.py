"""Certified checks of the irrationality-measure inequalities.

Three bounds on ``|theta - p/q|`` are handled, all strict and all in terms
of ``D = D(q, sigma)``:

* general Cantor series: ``a_{D+1} / (b_1 ... b_{D+1})``, needing ``D > 1``;
* ``e`` over ``sigma = (2, 3, 4, ...)``: ``1 / (D + 2)!`` for every ``q != 0``;
* ``xi`` over ``sigma = (2^5, 3^5, ...)``: ``1 / ((D + 2)!)^5``.

Every verdict is backed by exact rational enclosures of ``theta``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial, floor
from typing import Optional

from .cantor_core import (
    CantorSeries,
    partial_sum_pair,
    tail_theta_n,
    value_enclosure,
)
from .constants import E, XI
from .dfunc import d_function, smarandache
from .errors import PreconditionNotCertified, UndecidedAtDepth
from .rational import RationalInterval, decimal_display, from_exact_str, to_exact_str
from .sequences import BaseKind, DigitKind, cumulative_product

HALF = Fraction(1, 2)
DEFAULT_REFINE_DEPTH = 60


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"
    NOT_APPLICABLE = "not_applicable"


def _usable_depth(theta: CantorSeries, depth: int) -> int:
    limit = theta.defined_length
    return depth if limit is None else min(depth, limit)


# -- theta_n <= 1/2 ----------------------------------------------------------

@dataclass(frozen=True)
class HalfRow:
    n: int
    status: Status
    method: str
    upper_bound: Optional[Fraction]
    enclosure: Optional[RationalInterval] = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "status": self.status.value,
            "method": self.method,
            "theta_n_upper": None if self.upper_bound is None else to_exact_str(self.upper_bound),
            "theta_n_enclosure": None if self.enclosure is None else self.enclosure.to_json(),
        }


@dataclass(frozen=True)
class ConditionReport:
    n_min: int
    n_max: int
    fast_path_passed: bool
    fast_path_first_failure: Optional[int]
    tail_guaranteed: bool
    rows: tuple

    @property
    def status(self) -> Status:
        states = {r.status for r in self.rows}
        if Status.FAIL in states:
            return Status.FAIL
        if Status.UNDECIDED in states:
            return Status.UNDECIDED
        return Status.PASS

    def to_json(self) -> dict:
        return {
            "n_range": [self.n_min, self.n_max],
            "sufficient_condition": {
                "passed": self.fast_path_passed,
                "first_failure_m": self.fast_path_first_failure,
                "tail_guaranteed": self.tail_guaranteed,
            },
            "rows": [r.to_json() for r in self.rows],
            "verdict": self.status.value,
        }


def _tail_guarantee(theta: CantorSeries, checked_to: int) -> bool:
    """Whether ``4 a_m <= b_m`` is known for every ``m > checked_to``."""
    rule, sigma = theta.digits, theta.sigma
    if sigma.kind is BaseKind.EXPLICIT:
        return False
    if rule.kind is DigitKind.EVENTUALLY_ZERO:
        return checked_to >= rule.start - 1
    if rule.kind is DigitKind.CONSTANT_ONE:
        # bases are nondecreasing for successor and successor_pow
        return 4 <= theta.base(checked_to + 1)
    return False


def half_condition(theta: CantorSeries, n_max: int = 10,
                   refine_depth: int = DEFAULT_REFINE_DEPTH, n_min: int = 2) -> ConditionReport:
    """Certify ``theta_n <= 1/2`` for ``n_min <= n <= n_max``.

    First tries the sufficient condition ``4 a_m <= b_m`` for all
    ``m >= 2``; where that is not established, bounds each ``theta_n`` from
    a depth-``refine_depth`` enclosure. Raises :class:`UndecidedAtDepth`
    (carrying the report) if some ``n`` stays undecided.
    """
    if n_max < n_min or n_min < 1:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    checked_to = n_max
    if theta.digits.kind is DigitKind.EVENTUALLY_ZERO:
        checked_to = max(n_max, theta.digits.start - 1)
    limit = theta.defined_length
    if limit is not None:
        checked_to = min(checked_to, limit)
    first_failure = None
    for m in range(2, checked_to + 1):
        if 4 * theta.digit(m) > theta.base(m):
            first_failure = m
            break
    guaranteed = first_failure is None and _tail_guarantee(theta, checked_to)
    fast = first_failure is None and guaranteed

    rows = []
    depth = _usable_depth(theta, max(refine_depth, n_max + 1))
    for n in range(n_min, n_max + 1):
        if fast:
            rows.append(HalfRow(n, Status.PASS, "sufficient_condition", HALF))
            continue
        if depth <= n:
            rows.append(HalfRow(n, Status.UNDECIDED, "enclosure", None))
            continue
        enc = tail_theta_n(theta, n, depth)
        if enc.hi <= HALF:
            status = Status.PASS
        elif enc.lo > HALF:
            status = Status.FAIL
        else:
            status = Status.UNDECIDED
        rows.append(HalfRow(n, status, "enclosure", enc.hi, enc))
    report = ConditionReport(n_min, n_max, first_failure is None, first_failure, guaranteed, tuple(rows))
    if report.status is Status.UNDECIDED:
        raise UndecidedAtDepth(f"theta_n <= 1/2 undecided at refine depth {depth}", report)
    return report


# -- the bounds ----------------------------------------------------------------

class BoundRule(str, Enum):
    EQ5_GENERAL = "general"
    EQ6_FOR_E = "e"
    FOR_XI = "xi"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class MeasureBound:
    q: int
    d_value: int
    rhs: Fraction
    rule: BoundRule
    note: Optional[str] = None

    @property
    def applicable(self) -> bool:
        return self.rule is not BoundRule.NOT_APPLICABLE

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "D": self.d_value,
            "rhs": to_exact_str(self.rhs),
            "rule": self.rule.value,
            "note": self.note,
        }


def _same_series(a: CantorSeries, b: CantorSeries) -> bool:
    return a.a0 == b.a0 and a.digits == b.digits and a.sigma == b.sigma


def measure_bound(theta: CantorSeries, q: int, sigma=None, horizon=None) -> MeasureBound:
    """Right-hand side of the strict lower bound on ``|theta - p/q|``."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if sigma is not None and sigma != theta.sigma:
        raise ValueError("sigma must be the base sequence of theta")
    d = d_function(q, theta.sigma, horizon)
    if _same_series(theta, E):
        return MeasureBound(q, d, Fraction(1, factorial(d + 2)), BoundRule.EQ6_FOR_E)
    if _same_series(theta, XI):
        return MeasureBound(q, d, Fraction(1, factorial(d + 2) ** 5), BoundRule.FOR_XI)
    rhs = Fraction(theta.digit(d + 1), cumulative_product(theta.sigma, d + 1))
    if d == 1:
        return MeasureBound(q, d, rhs, BoundRule.NOT_APPLICABLE,
                            "D(q, sigma) = 1; the general bound needs D(q, sigma) > 1")
    if rhs == 0:
        return MeasureBound(q, d, rhs, BoundRule.EQ5_GENERAL,
                            "a_{D+1} = 0: bound is zero, only separation from p/q is asserted")
    return MeasureBound(q, d, rhs, BoundRule.EQ5_GENERAL)


# -- best approximation with denominator B_n ------------------------------------

@dataclass(frozen=True)
class ArgminReport:
    n: int
    a_n: int
    b_n: int
    window: int
    theta_n: RationalInterval
    in_proposition_range: bool
    margins: tuple          # (m, min over the enclosure of |theta - m/B| - |theta - A/B|)
    outside_window_certified: bool

    @property
    def certified(self) -> bool:
        return self.outside_window_certified and all(margin >= 0 for _, margin in self.margins)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A_n": self.a_n,
            "B_n": self.b_n,
            "window": self.window,
            "theta_n": self.theta_n.to_json(),
            "in_proposition_range": self.in_proposition_range,
            "margins": [{"m": m, "margin": to_exact_str(v)} for m, v in self.margins],
            "outside_window_certified": self.outside_window_certified,
            "certified": self.certified,
        }


def _min_distance_gap(enc: RationalInterval, near: Fraction, other: Fraction) -> Fraction:
    """Exact minimum over ``t`` in ``enc`` of ``|t - other| - |t - near|``.

    The function is piecewise linear with breakpoints at ``near`` and
    ``other``, so its minimum is attained at an endpoint or a breakpoint.
    """
    points = [enc.lo, enc.hi] + [x for x in (near, other) if enc.contains(x)]
    return min(abs(t - other) - abs(t - near) for t in points)


def best_approx_at_depth(theta: CantorSeries, n: int, window: int = 3,
                         refine_depth: int = DEFAULT_REFINE_DEPTH) -> ArgminReport:
    """Certify that ``A_n / B_n`` is a best approximation with denominator ``B_n``.

    Needs a certified ``theta_n <= 1/2``. Every ``m`` with
    ``|m - A_n| <= window`` is checked exactly against the enclosure;
    integers beyond the window are covered by the triangle inequality.
    """
    if n < 1 or window < 1:
        raise ValueError("need n >= 1 and window >= 1")
    depth = _usable_depth(theta, max(refine_depth, n + 1))
    if depth <= n:
        raise PreconditionNotCertified(f"series not defined past depth {n}")
    t_enc = tail_theta_n(theta, n, depth)
    if t_enc.hi > HALF:
        state = "false" if t_enc.lo > HALF else "undecided"
        raise PreconditionNotCertified(f"theta_{n} <= 1/2 is {state} at depth {depth} (enclosure {t_enc})")
    a_n, b_n = partial_sum_pair(theta, n)
    enc = value_enclosure(theta, depth)
    near = Fraction(a_n, b_n)
    margins = []
    for m in range(a_n - window, a_n + window + 1):
        if m == a_n:
            continue
        margins.append((m, _min_distance_gap(enc, near, Fraction(m, b_n))))
    # |m - A_n| >= window + 1 gives a gap of at least (window + 1 - 2 theta_n) / B_n
    outside_ok = window + 1 >= 2 * t_enc.hi
    report = ArgminReport(n, a_n, b_n, window, t_enc, n >= 2, tuple(margins), outside_ok)
    if not report.certified:
        raise UndecidedAtDepth(f"argmin at n={n} not certified at depth {depth}", report)
    return report


# -- exhaustive verification -------------------------------------------------------

@dataclass
class MeasureRow:
    q: int
    bound: MeasureBound
    verdict: Status
    tested: tuple = ()
    boundary: tuple = ()
    distances: dict = field(default_factory=dict)
    depth: Optional[int] = None
    enclosure: Optional[RationalInterval] = None

    @property
    def certified_distance_lower_bound(self) -> Optional[Fraction]:
        return min(self.distances.values()) if self.distances else None

    def to_json(self) -> dict:
        lb = self.certified_distance_lower_bound
        return {
            "q": self.q,
            "D": self.bound.d_value,
            "rule": self.bound.rule.value,
            "rhs": to_exact_str(self.bound.rhs),
            "tested_p": list(self.tested),
            "boundary_p": list(self.boundary),
            "distance_lower_bounds": {str(p): to_exact_str(d) for p, d in sorted(self.distances.items())},
            "certified_distance_lower_bound": None if lb is None else to_exact_str(lb),
            "depth": self.depth,
            "enclosure": None if self.enclosure is None else {
                "lo": to_exact_str(self.enclosure.lo), "hi": to_exact_str(self.enclosure.hi)},
            "verdict": self.verdict.value,
        }


@dataclass
class MeasureReport:
    series: str
    neighbors: int
    refine_depth: int
    rows: list

    def counts(self) -> dict:
        out = {s.value: 0 for s in Status}
        for r in self.rows:
            out[r.verdict.value] += 1
        return out

    @property
    def verdict(self) -> Status:
        c = self.counts()
        if c["fail"]:
            return Status.FAIL
        if c["undecided"]:
            return Status.UNDECIDED
        return Status.PASS

    def to_json(self) -> dict:
        return {
            "series": self.series,
            "neighbors": self.neighbors,
            "refine_depth": self.refine_depth,
            "counts": self.counts(),
            "verdict": self.verdict.value,
            "rows": [r.to_json() for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "D", "rule", "rhs", "certified_distance_lower_bound",
                         "lower_bound_approx", "depth", "verdict"])
        for r in self.rows:
            lb = r.certified_distance_lower_bound
            writer.writerow([
                r.q, r.bound.d_value, r.bound.rule.value, to_exact_str(r.bound.rhs),
                "" if lb is None else to_exact_str(lb),
                "" if lb is None else decimal_display(lb) + " (approx)",
                r.depth if r.depth is not None else "", r.verdict.value,
            ])
        return buf.getvalue()


def _depth_schedule(theta: CantorSeries, refine_depth: int) -> list:
    steps = {refine_depth}
    d = 8
    while d < refine_depth:
        steps.add(d)
        d *= 2
    return sorted({_usable_depth(theta, s) for s in steps})


def _nearest_integers(center: Fraction, k: int) -> list:
    base = floor(center)
    pool = range(base - k, base + k + 2)
    return sorted(sorted(pool, key=lambda p: (abs(p - center), p))[:k])


def _verify_q(theta, q, k, schedule, enclosures, horizon=None) -> MeasureRow:
    bound = measure_bound(theta, q, horizon=horizon)
    if not bound.applicable:
        return MeasureRow(q, bound, Status.NOT_APPLICABLE)
    rhs = bound.rhs
    row = MeasureRow(q, bound, Status.UNDECIDED)
    for depth in schedule:
        enc = enclosures.get(depth)
        if enc is None:
            enc = enclosures[depth] = value_enclosure(theta, depth)
        tested = _nearest_integers(q * enc.midpoint, k)
        p_lo, p_hi = tested[0], tested[-1]
        boundary = (p_lo - 1, p_hi + 1)
        # every untested p is at least as far from q*theta as p_lo or p_hi
        monotone_ok = q * enc.lo >= p_lo - HALF and q * enc.hi <= p_hi + HALF
        distances, failed, open_ = {}, False, False
        for p in list(tested) + list(boundary):
            x = Fraction(p, q)
            lb = enc.distance_to(x)
            distances[p] = lb
            if lb > rhs:
                continue
            if enc.farthest_distance_to(x) <= rhs:
                failed = True
            else:
                open_ = True
        row = MeasureRow(q, bound, Status.UNDECIDED, tuple(tested), boundary, distances, depth, enc)
        if failed:
            row.verdict = Status.FAIL
            return row
        if not open_ and monotone_ok:
            row.verdict = Status.PASS
            return row
    return row


def verify_measure(theta: CantorSeries, q_max: int, neighbors: int = 2,
                   refine_depth: int = DEFAULT_REFINE_DEPTH, q_values=None, horizon=None) -> MeasureReport:
    """Certify ``|theta - p/q| > rhs(q)`` for ``1 <= q <= q_max``.

    For each ``q`` the ``neighbors`` integers nearest ``q * theta`` are
    tested, plus the next integer on each side; a row passes only once
    the enclosure also shows that no untested ``p`` can be nearer.
    Undecided rows are reported, never raised.
    """
    if q_max < 1 or neighbors < 1:
        raise ValueError("need q_max >= 1 and neighbors >= 1")
    schedule = _depth_schedule(theta, refine_depth)
    enclosures = {}
    qs = range(1, q_max + 1) if q_values is None else sorted(q_values)
    rows = [_verify_q(theta, q, neighbors, schedule, enclosures, horizon) for q in qs]
    return MeasureReport(theta.label, neighbors, refine_depth, rows)


def recheck_row(row: dict) -> bool:
    """Re-derive a passing row's claim from its serialized exact rationals."""
    rhs = from_exact_str(row["rhs"])
    enc = RationalInterval(from_exact_str(row["enclosure"]["lo"]), from_exact_str(row["enclosure"]["hi"]))
    q = row["q"]
    for p in row["tested_p"] + row["boundary_p"]:
        if enc.distance_to(Fraction(p, q)) <= rhs:
            return False
        if from_exact_str(row["distance_lower_bounds"][str(p)]) != enc.distance_to(Fraction(p, q)):
            return False
    p_lo, p_hi = min(row["tested_p"]), max(row["tested_p"])
    if not (q * enc.lo >= p_lo - HALF and q * enc.hi <= p_hi + HALF):
        return False
    return from_exact_str(row["certified_distance_lower_bound"]) > rhs


# -- comparison with the Smarandache-based bound -------------------------------------

@dataclass(frozen=True)
class SmarandacheRow:
    q: int
    s_value: int
    d_value: int
    smarandache_rhs: Optional[Fraction]
    d_rhs: Fraction

    @property
    def equal(self) -> Optional[bool]:
        return None if self.smarandache_rhs is None else self.smarandache_rhs == self.d_rhs

    @property
    def note(self) -> Optional[str]:
        if self.smarandache_rhs is None:
            return "q = 1: only the D-based bound applies (the S-based bound needs q > 1)"
        return None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "S": self.s_value,
            "D": self.d_value,
            "smarandache_rhs": None if self.smarandache_rhs is None else to_exact_str(self.smarandache_rhs),
            "d_rhs": to_exact_str(self.d_rhs),
            "equal": self.equal,
            "note": self.note,
        }


def compare_smarandache(q_values) -> list:
    """Rows comparing ``1/(S(q)+1)!`` with ``1/(D(q, sigma)+2)!`` for ``e``."""
    rows = []
    for q in q_values:
        if q < 1:
            raise ValueError(f"q must be positive, got {q}")
        s = smarandache(q)
        d = d_function(q, E.sigma)
        s_rhs = Fraction(1, factorial(s + 1)) if q >= 2 else None
        rows.append(SmarandacheRow(q, s, d, s_rhs, Fraction(1, factorial(d + 2))))
    return rows
