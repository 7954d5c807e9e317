"""Exact rationals and closed rational intervals.

``fractions.Fraction`` is the exact rational type throughout; it keeps
values in lowest terms with a positive denominator. This module adds the
closed interval type used for certified enclosures, a strict parser for
command-line numbers, and the JSON/display conversions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

ExactRational = Fraction
RationalLike = Union[int, Fraction, str]

_POWER = re.compile(r"^\s*([+-]?\d+)\s*\^\s*(\d+)\s*$")


def _parse_atom(text: str) -> Fraction:
    m = _POWER.match(text)
    if m:
        return Fraction(int(m.group(1)) ** int(m.group(2)))
    text = text.strip()
    if not text:
        raise ValueError("empty number")
    # Fraction() parses integers and terminating decimals exactly;
    # reject inf/nan spellings, which it would turn into errors anyway.
    return Fraction(text)


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"p/q"``, an integer, a terminating decimal or ``"a^b"`` exactly.

    >>> parse_rational("1/10^6")
    Fraction(1, 1000000)
    >>> parse_rational("0.125")
    Fraction(1, 8)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    parts = text.split("/")
    if len(parts) == 1:
        return _parse_atom(parts[0])
    if len(parts) != 2:
        raise ValueError(f"not a rational: {text!r}")
    den = _parse_atom(parts[1])
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return _parse_atom(parts[0]) / den


def to_exact_str(x: Fraction) -> str:
    """Render as ``"num/den"``; the denominator is always written."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def from_exact_str(text: str) -> Fraction:
    num, den = text.split("/")
    return Fraction(int(num), int(den))


def decimal_display(x: Fraction, digits: int = 15) -> str:
    """Decimal string truncated toward zero after ``digits`` fractional places.

    Display only: the result is generally not equal to ``x``.
    """
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x.numerator) * 10**digits // x.denominator
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints.

    ``depth`` optionally records the refinement depth that produced the
    interval; it does not take part in equality.
    """

    lo: Fraction
    hi: Fraction
    depth: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x, depth=None) -> "RationalInterval":
        return cls(x, x, depth)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interior(self, x) -> bool:
        return self.lo < x < self.hi

    def issubset(self, other: "RationalInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def distance_to(self, x) -> Fraction:
        """Exact distance from ``x`` to the interval (0 when inside)."""
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return Fraction(0)

    def farthest_distance_to(self, x) -> Fraction:
        return max(abs(x - self.lo), abs(self.hi - x))

    def scale_shift(self, factor, shift) -> "RationalInterval":
        """Image under ``t -> factor * (t - shift)`` for ``factor >= 0``."""
        if factor < 0:
            raise ValueError("factor must be nonnegative")
        return RationalInterval(factor * (self.lo - shift), factor * (self.hi - shift), self.depth)

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi), self.depth)

    def to_json(self, digits: int = 15) -> dict:
        out = {
            "lo": to_exact_str(self.lo),
            "hi": to_exact_str(self.hi),
            "width": to_exact_str(self.width),
            "lo_approx": decimal_display(self.lo, digits),
            "hi_approx": decimal_display(self.hi, digits),
            "approx_rounding": "truncated_toward_zero",
        }
        if self.depth is not None:
            out["depth"] = self.depth
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RationalInterval":
        return cls(from_exact_str(data["lo"]), from_exact_str(data["hi"]), data.get("depth"))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"
