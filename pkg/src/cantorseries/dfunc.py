"""The divisibility index ``D(q, sigma)`` and the Smarandache function ``S(q)``.

``D(q, sigma)`` is the least ``n`` with ``q | b_1 ... b_n``. With
``sigma = (1, 2, 3, ...)`` it is ``S(q)``, the least ``n`` with ``q | n!``;
with ``sigma = (2, 3, 4, ...)`` it is ``S(q) - 1`` for ``q >= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernels
from .errors import HorizonExhausted
from .sequences import BaseKind, BaseSequenceSpec, kernel_kind


def default_horizon(q: int) -> int:
    return max(64, 4 * abs(q))


@dataclass(frozen=True)
class DQuery:
    q: int
    sigma: BaseSequenceSpec
    horizon: Optional[int] = None

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("D(q, sigma) is undefined at q = 0")
        if self.horizon is not None and self.horizon < 1:
            raise ValueError("horizon must be >= 1")


def d_function(q, sigma: BaseSequenceSpec = None, horizon: Optional[int] = None) -> int:
    """``D(q, sigma)``; accepts a :class:`DQuery` in place of ``q``.

    Divisibility is decided on ``|q|``. Raises :class:`HorizonExhausted`
    when no index up to the horizon works, which means either the horizon
    is too short or some prime factor of ``q`` never divides a base.
    """
    if isinstance(q, DQuery):
        q, sigma, horizon = q.q, q.sigma, q.horizon
    DQuery(q, sigma, horizon)
    m = abs(q)
    if horizon is None:
        horizon = default_horizon(q)
    n = kernels.d_scan(m, kernel_kind(sigma), sigma.k, sigma.bases, horizon)
    if n == 0:
        limit = horizon if sigma.length is None else min(horizon, sigma.length)
        raise HorizonExhausted(f"no n <= {limit} with {m} | b_1...b_n for sigma={sigma.label}")
    return n


def smarandache(q: int, horizon: Optional[int] = None) -> int:
    """``S(q)``: least ``n`` with ``q | n!``, by scanning ``n = 1, 2, ...``."""
    if q < 1:
        raise ValueError(f"S(q) needs q >= 1, got {q}")
    if horizon is None:
        horizon = q
    n = kernels.factorial_scan(q, horizon)
    if n == 0:
        raise HorizonExhausted(f"no n <= {horizon} with {q} | n!")
    return n


@dataclass(frozen=True)
class DRow:
    q: int
    d: int
    s: Optional[int]
    identity_ok: Optional[bool]

    def to_json(self) -> dict:
        return {"q": self.q, "D": self.d, "S": self.s, "identity_ok": self.identity_ok}


def d_row(q: int, sigma: BaseSequenceSpec, horizon: Optional[int] = None) -> DRow:
    """``D(q, sigma)`` together with ``S(q)`` and the matching identity, if one applies.

    For successor bases the identity is ``S(q) = D + 1`` (``q`` not a unit);
    for natural bases it is ``S(q) = D``.
    """
    d = d_function(q, sigma, horizon)
    m = abs(q)
    if sigma.kind is BaseKind.SUCCESSOR and m >= 2:
        s = smarandache(m)
        return DRow(q, d, s, s == d + 1)
    if sigma.kind is BaseKind.NATURAL:
        s = smarandache(m)
        return DRow(q, d, s, s == d)
    if sigma.kind is BaseKind.SUCCESSOR:
        return DRow(q, d, smarandache(m), None)
    return DRow(q, d, None, None)


def d_table(q_values, sigma: BaseSequenceSpec, horizon: Optional[int] = None) -> list:
    return [d_row(q, sigma, horizon) for q in q_values]
