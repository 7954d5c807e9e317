"""Greedy digit extraction for rationals and exact resummation.

A rational ``x`` is expanded over a base sequence by repeatedly scaling
the fractional remainder by the next base and peeling off its integer
part. Over ``(2, 3, 4, ...)`` this is the factorial series
``x = c_1/1! + c_2/2! + ...`` with ``a_n = c_{n+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from . import kernels
from .constants import SIGMA
from .rational import parse_rational, to_exact_str
from .sequences import BaseKind, BaseSequenceSpec, base_at
from .errors import SpecError


@dataclass(frozen=True)
class DigitExpansion:
    """``a0`` plus fractional digits over ``sigma``.

    ``terminated`` is true iff the greedy remainder reached zero, in which
    case the finite expansion equals the source exactly.
    """

    a0: int
    digits: tuple
    sigma: BaseSequenceSpec
    terminated: bool

    @property
    def factorial_digits(self) -> tuple:
        """``(c_1, c_2, ...)``; meaningful when ``sigma`` is ``(2, 3, 4, ...)``."""
        return (self.a0,) + self.digits

    def last_nonzero_index(self) -> int:
        """Index of the last nonzero ``c_n`` (1 when only ``c_1`` remains)."""
        for i in range(len(self.digits) - 1, -1, -1):
            if self.digits[i]:
                return i + 2
        return 1

    def to_json(self) -> dict:
        return {
            "a0": self.a0,
            "digits": list(self.digits),
            "sigma": self.sigma.to_json(),
            "terminated": self.terminated,
        }


def factorial_digits(x, max_terms: int = 1000) -> DigitExpansion:
    """Factorial-series digits ``c_1, ..., c_K`` of a rational, ``K <= max_terms``.

    ``c_1 = floor(x)`` carries the sign; ``0 <= c_n <= n - 1`` for ``n >= 2``.
    For ``x = p/q`` in lowest terms the expansion ends by index ``S(q)``.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    x = parse_rational(x)
    c1, num = divmod(x.numerator, x.denominator)
    digits, rest = kernels.factorial_extract(num, x.denominator, max_terms - 1)
    return DigitExpansion(c1, tuple(digits), SIGMA, rest == 0)


def cantor_digits(x, sigma: BaseSequenceSpec, max_terms: int = 1000) -> DigitExpansion:
    """Greedy digits ``a_0; a_1, ..., a_K`` of ``x`` over ``sigma``, ``K <= max_terms``."""
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    if sigma.kind is BaseKind.NATURAL:
        raise SpecError("natural bases start with b_1 = 1 and cannot carry digits")
    x = parse_rational(x)
    if sigma.kind is BaseKind.SUCCESSOR:
        out = factorial_digits(x, max_terms + 1)
        return DigitExpansion(out.a0, out.digits, sigma, out.terminated)
    a0 = floor(x)
    num, den = x.numerator - a0 * x.denominator, x.denominator
    digits = []
    n = 0
    while num and len(digits) < max_terms:
        n += 1
        a, num = divmod(num * base_at(sigma, n), den)
        digits.append(a)
    return DigitExpansion(a0, tuple(digits), sigma, num == 0)


def resum(expansion: DigitExpansion) -> Fraction:
    """Exact value of a finite expansion."""
    sigma, digits = expansion.sigma, expansion.digits
    if sigma.kind is BaseKind.SUCCESSOR:
        num, den = kernels.successor_resum(list(digits), 2)
        return expansion.a0 + Fraction(num, den)
    if sigma.kind is BaseKind.NATURAL:
        num, den = kernels.successor_resum(list(digits), 1)
        return expansion.a0 + Fraction(num, den)
    value = Fraction(0)
    for n in range(len(digits), 0, -1):
        value = (digits[n - 1] + value) / base_at(sigma, n)
    return expansion.a0 + value


def factorial_value(c) -> Fraction:
    """``c_1/1! + c_2/2! + ...`` for a finite digit list ``c``."""
    c = list(c)
    if not c:
        return Fraction(0)
    num, den = kernels.successor_resum(c[1:], 2)
    return c[0] + Fraction(num, den)


def expansion_json(expansion: DigitExpansion, source: Fraction) -> dict:
    out = expansion.to_json()
    out["source"] = to_exact_str(source)
    return out
