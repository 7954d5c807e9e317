"""Cantor series values: partial sums, nested intervals and certified enclosures.

For ``theta = a_0 + sum_n a_n / (b_1 ... b_n)`` the depth-``n`` partial sum
is ``A_n / B_n``. Every value below is an exact ``Fraction``; nothing in
this module touches floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import IndexBeyondExplicitList, PrecisionUnreachable, SpecError
from .rational import RationalInterval, to_exact_str
from .sequences import (
    BaseKind,
    BaseSequenceSpec,
    DigitKind,
    DigitRule,
    base_at,
    cumulative_product,
)


@dataclass(frozen=True)
class CantorSeries:
    a0: int
    digits: DigitRule
    sigma: BaseSequenceSpec
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.sigma.kind is BaseKind.NATURAL:
            raise SpecError("natural bases (1, 2, 3, ...) are a divisibility sequence only; b_1 = 1 < 2")
        object.__setattr__(self, "a0", int(self.a0))

    @property
    def defined_length(self) -> Optional[int]:
        """Largest index with both digit and base defined (``None``: unbounded)."""
        lengths = [x for x in (self.digits.length, self.sigma.length) if x is not None]
        return min(lengths) if lengths else None

    def base(self, n: int) -> int:
        return base_at(self.sigma, n)

    def digit(self, n: int) -> int:
        a = self.digits.digit_at(n, self.sigma)
        b = self.base(n)
        if not 0 <= a <= b - 1:
            raise SpecError(f"a_{n} = {a} is outside [0, b_{n} - 1] = [0, {b - 1}]")
        return a

    @property
    def label(self) -> str:
        return self.name or "theta"

    def to_json(self) -> dict:
        out = {"name": self.label, "a0": self.a0, "sigma": self.sigma.to_json()}
        out.update(self.digits.to_json())
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CantorSeries":
        from .constants import resolve_sigma

        unknown = set(data) - {"name", "a0", "sigma", "digits", "tail"}
        if unknown:
            raise SpecError(f"unknown keys in series spec: {sorted(unknown)}")
        if "sigma" not in data or "a0" not in data:
            raise SpecError("series spec needs \"a0\" and \"sigma\"")
        sigma = data["sigma"]
        sigma = resolve_sigma(sigma) if isinstance(sigma, str) else BaseSequenceSpec.from_json(sigma)
        return cls(int(data["a0"]), DigitRule.from_json(data), sigma, data.get("name"))


def load_series(path) -> CantorSeries:
    with open(path) as fh:
        return CantorSeries.from_json(json.load(fh))


@lru_cache(maxsize=4096)
def partial_sum_pair(theta: CantorSeries, n: int) -> tuple:
    """Unreduced ``(A_n, B_n)`` by Horner accumulation; ``(a_0, 1)`` at ``n = 0``."""
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    if n == 0:
        return theta.a0, 1
    a_prev, b_prev = partial_sum_pair(theta, n - 1) if n <= 64 else _pair_iter(theta, n - 1)
    b = theta.base(n)
    return a_prev * b + theta.digit(n), b_prev * b


def _pair_iter(theta, n):
    num, den = theta.a0, 1
    for k in range(1, n + 1):
        b = theta.base(k)
        num = num * b + theta.digit(k)
        den *= b
    return num, den


def partial_sum(theta: CantorSeries, n: int) -> Fraction:
    """Exact ``a_0 + a_1/b_1 + ... + a_n/(b_1...b_n)``."""
    num, den = partial_sum_pair(theta, n)
    return Fraction(num, den)


def enclosure(theta: CantorSeries, n: int) -> RationalInterval:
    """``[S_n, S_n + 1/B_n]``, which contains ``theta`` for every ``n >= 0``."""
    num, den = partial_sum_pair(theta, n)
    return RationalInterval(Fraction(num, den), Fraction(num + 1, den), n)


def nested_interval(theta: CantorSeries, n: int) -> RationalInterval:
    """The interval ``I_n``; repeats ``I_{n-1}`` when ``a_n = 0``."""
    if n < 1:
        raise ValueError(f"nested intervals start at n = 1, got {n}")
    current = enclosure(theta, 1)
    for k in range(2, n + 1):
        if theta.digit(k) != 0:
            current = enclosure(theta, k)
        else:
            # force the digit/base lookup so out-of-range indices still raise
            theta.base(k)
    return RationalInterval(current.lo, current.hi, n)


def nested_intervals(theta: CantorSeries, n: int) -> list:
    """``[I_1, ..., I_n]`` computed in one pass."""
    out = [enclosure(theta, 1)]
    for k in range(2, n + 1):
        out.append(enclosure(theta, k) if theta.digit(k) != 0 else out[-1])
    return [RationalInterval(iv.lo, iv.hi, k) for k, iv in enumerate(out, start=1)]


def certified_value(theta: CantorSeries, epsilon, max_depth: int = 200) -> RationalInterval:
    """Enclosure of ``theta`` of width at most ``epsilon``.

    Uses the smallest depth ``n <= max_depth`` with ``1/B_n <= epsilon``.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    for n in range(1, max_depth + 1):
        try:
            den = cumulative_product(theta.sigma, n)
        except IndexBeyondExplicitList as exc:
            raise PrecisionUnreachable(f"sequence ends at depth {n - 1} before width {epsilon}") from exc
        if Fraction(1, den) <= epsilon:
            try:
                return enclosure(theta, n)
            except IndexBeyondExplicitList as exc:
                raise PrecisionUnreachable(str(exc)) from exc
    raise PrecisionUnreachable(f"width {epsilon} not reached within depth {max_depth}")


class Terminal(str, Enum):
    EVENTUALLY_ZERO = "eventually_zero"
    EVENTUALLY_MAX = "eventually_max"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PrefixClassification:
    verdict: Terminal
    start: Optional[int] = None
    closed_form: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "n0": self.start,
            "closed_form": None if self.closed_form is None else to_exact_str(self.closed_form),
        }


def classify_prefix(theta: CantorSeries, horizon: int = 64) -> PrefixClassification:
    """Exact value for digit rules that end in all zeros or all maximal digits.

    ``start`` is the smallest index from which the terminal pattern holds;
    a pattern starting beyond ``horizon`` is reported as inconclusive.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    rule = theta.digits
    if rule.kind is DigitKind.EVENTUALLY_ZERO:
        start = rule.start
        while start > 1 and theta.digit(start - 1) == 0:
            start -= 1
        if start > horizon:
            return PrefixClassification(Terminal.INCONCLUSIVE)
        return PrefixClassification(Terminal.EVENTUALLY_ZERO, start, partial_sum(theta, start - 1))
    if rule.kind is DigitKind.EVENTUALLY_MAX:
        start = rule.start
        while start > 1 and theta.digit(start - 1) == theta.base(start - 1) - 1:
            start -= 1
        if start > horizon:
            return PrefixClassification(Terminal.INCONCLUSIVE)
        value = partial_sum(theta, start - 1) + Fraction(1, cumulative_product(theta.sigma, start - 1))
        return PrefixClassification(Terminal.EVENTUALLY_MAX, start, value)
    return PrefixClassification(Terminal.INCONCLUSIVE)


def value_enclosure(theta: CantorSeries, n: int) -> RationalInterval:
    """Best certified enclosure of ``theta`` available at depth ``n``.

    For terminal digit rules whose pattern has started by depth ``n`` the
    exact value is known and the enclosure collapses to a point.
    """
    rule = theta.digits
    if rule.kind in (DigitKind.EVENTUALLY_ZERO, DigitKind.EVENTUALLY_MAX) and n >= rule.start - 1:
        return RationalInterval.point(classify_prefix(theta, max(n, rule.start)).closed_form, n)
    return enclosure(theta, n)


def tail_theta_n(theta: CantorSeries, n: int, refine_depth: int) -> RationalInterval:
    """Enclosure of ``theta_n = B_n * (theta - S_n)``, the normalized tail."""
    if not refine_depth > n >= 1:
        raise ValueError(f"need refine_depth > n >= 1, got n={n}, refine_depth={refine_depth}")
    shift = partial_sum(theta, n)
    scaled = value_enclosure(theta, refine_depth).scale_shift(cumulative_product(theta.sigma, n), shift)
    unit = RationalInterval(0, 1)
    return RationalInterval(max(scaled.lo, unit.lo), min(scaled.hi, unit.hi), refine_depth)


class Order(str, Enum):
    LESS = "less"          # theta < x
    GREATER = "greater"    # theta > x
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ComparisonResult:
    order: Order
    x: Fraction
    gap: Optional[Fraction] = None
    depth: Optional[int] = None
    interval: Optional[RationalInterval] = None

    def to_json(self) -> dict:
        return {
            "order": self.order.value,
            "x": to_exact_str(self.x),
            "gap_lower_bound": None if self.gap is None else to_exact_str(self.gap),
            "depth": self.depth,
            "interval": None if self.interval is None else self.interval.to_json(),
        }


def certified_compare(theta: CantorSeries, x, max_depth: int = 64, min_gap=None) -> ComparisonResult:
    """Decide the order of ``theta`` and a rational by nested-interval separation.

    Returns at the first depth where ``x`` lies strictly outside ``I_n``,
    or, when ``min_gap`` is given, keeps refining until the certified gap
    exceeds it (or ``max_depth`` is reached). Equality is never reported:
    a rational that stays inside every ``I_n`` gives ``UNDECIDED``.
    """
    x = Fraction(x)
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    current = None
    reached = None
    found = None
    for n in range(1, max_depth + 1):
        try:
            if n == 1 or theta.digit(n) != 0:
                current = enclosure(theta, n)
        except IndexBeyondExplicitList:
            break
        reached = n
        interval = RationalInterval(current.lo, current.hi, n)
        if x > current.hi:
            found = ComparisonResult(Order.LESS, x, x - current.hi, n, interval)
        elif x < current.lo:
            found = ComparisonResult(Order.GREATER, x, current.lo - x, n, interval)
        if found is not None and (min_gap is None or found.gap > min_gap):
            return found
    if found is not None:
        return found
    return ComparisonResult(Order.UNDECIDED, x, None, reached, current)
