"""Base sequences ``b_n``, digit rules ``a_n`` and their finite checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional

from .errors import IndexBeyondExplicitList, SpecError
from . import kernels

DEFAULT_VALIDATION_HORIZON = 64
DEFAULT_PRIME_BOUND = 100


class BaseKind(str, Enum):
    SUCCESSOR = "successor"
    SUCCESSOR_POW = "successor_pow"
    NATURAL = "natural"
    EXPLICIT = "explicit"


_KERNEL_KIND = {
    BaseKind.SUCCESSOR: kernels.KIND_SUCCESSOR,
    BaseKind.SUCCESSOR_POW: kernels.KIND_SUCCESSOR_POW,
    BaseKind.NATURAL: kernels.KIND_NATURAL,
    BaseKind.EXPLICIT: kernels.KIND_EXPLICIT,
}


@dataclass(frozen=True)
class BaseSequenceSpec:
    """A rule producing the bases ``b_1, b_2, ...``.

    ``SUCCESSOR`` gives ``n + 1``, ``SUCCESSOR_POW`` gives ``(n + 1)**k``,
    ``NATURAL`` gives ``n`` (only meaningful as a divisibility sequence,
    since ``b_1 = 1``) and ``EXPLICIT`` is a finite list.
    """

    kind: BaseKind
    k: int = 1
    bases: tuple = ()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", BaseKind(self.kind))
        object.__setattr__(self, "bases", tuple(int(b) for b in self.bases))
        if self.kind is BaseKind.SUCCESSOR_POW:
            if not isinstance(self.k, int) or self.k < 1:
                raise SpecError(f"successor_pow needs a positive integer k, got {self.k!r}")
        elif self.k != 1:
            raise SpecError(f"k is only meaningful for successor_pow, got k={self.k}")
        if self.kind is BaseKind.EXPLICIT:
            if not self.bases:
                raise SpecError("explicit base list is empty")
            bad = [b for b in self.bases if b < 2]
            if bad:
                raise SpecError(f"explicit bases must all be >= 2, got {bad}")
        elif self.bases:
            raise SpecError(f"bases list given for kind {self.kind.value}")

    @classmethod
    def successor(cls, name="sigma"):
        return cls(BaseKind.SUCCESSOR, name=name)

    @classmethod
    def successor_power(cls, k, name=None):
        return cls(BaseKind.SUCCESSOR_POW, k=k, name=name or f"successor^{k}")

    @classmethod
    def natural(cls, name="eta"):
        return cls(BaseKind.NATURAL, name=name)

    @classmethod
    def explicit(cls, bases, name=None):
        return cls(BaseKind.EXPLICIT, bases=tuple(bases), name=name)

    @property
    def length(self) -> Optional[int]:
        """Number of defined bases, ``None`` when unbounded."""
        return len(self.bases) if self.kind is BaseKind.EXPLICIT else None

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind is BaseKind.SUCCESSOR_POW:
            return f"successor_pow({self.k})"
        return self.kind.value

    def base_at(self, n: int) -> int:
        return base_at(self, n)

    def to_json(self) -> dict:
        out = {"name": self.label, "kind": self.kind.value}
        if self.kind is BaseKind.SUCCESSOR_POW:
            out["k"] = self.k
        if self.kind is BaseKind.EXPLICIT:
            out["bases"] = list(self.bases)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BaseSequenceSpec":
        try:
            kind = BaseKind(data["kind"])
        except (KeyError, ValueError) as exc:
            raise SpecError(f"bad or missing sequence kind in {data!r}") from exc
        unknown = set(data) - {"name", "kind", "k", "bases"}
        if unknown:
            raise SpecError(f"unknown keys in sequence spec: {sorted(unknown)}")
        return cls(
            kind,
            k=data.get("k", 1),
            bases=tuple(data.get("bases", ())),
            name=data.get("name"),
        )


def base_at(sigma: BaseSequenceSpec, n: int) -> int:
    """The base ``b_n`` (1-indexed)."""
    if n < 1:
        raise ValueError(f"base index must be >= 1, got {n}")
    kind = sigma.kind
    if kind is BaseKind.SUCCESSOR:
        return n + 1
    if kind is BaseKind.SUCCESSOR_POW:
        return (n + 1) ** sigma.k
    if kind is BaseKind.NATURAL:
        return n
    if n > len(sigma.bases):
        raise IndexBeyondExplicitList(
            f"b_{n} requested but the explicit list has {len(sigma.bases)} entries"
        )
    return sigma.bases[n - 1]


@lru_cache(maxsize=1024)
def cumulative_product(sigma: BaseSequenceSpec, n: int) -> int:
    """``B_n = b_1 * ... * b_n``, with ``B_0 = 1``."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    if n == 0:
        return 1
    prod = 1
    for i in range(1, n + 1):
        prod *= base_at(sigma, i)
    return prod


def primes_up_to(bound: int) -> list:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class CoverageReport:
    """Which primes ``p <= prime_bound`` divide some ``b_n`` with ``n <= horizon``.

    A finite scan is evidence for the infinitely-often condition, never a
    proof of it; ``finite_evidence_only`` is always true.
    """

    sigma: BaseSequenceSpec
    prime_bound: int
    horizon: int
    horizon_scanned: int
    witnesses: dict
    finite_evidence_only: bool = True

    @property
    def missing(self) -> list:
        return [p for p, idx in self.witnesses.items() if not idx]

    @property
    def passed(self) -> bool:
        return not self.missing

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "prime_bound": self.prime_bound,
            "horizon": self.horizon,
            "horizon_scanned": self.horizon_scanned,
            "witnesses": {str(p): list(idx) for p, idx in self.witnesses.items()},
            "missing_primes": self.missing,
            "verdict": "pass" if self.passed else "fail",
            "finite_evidence_only": True,
        }


def check_prime_coverage(sigma: BaseSequenceSpec, prime_bound: int = DEFAULT_PRIME_BOUND,
                         horizon: int = DEFAULT_VALIDATION_HORIZON) -> CoverageReport:
    if prime_bound < 2 or horizon < 1:
        raise ValueError("need prime_bound >= 2 and horizon >= 1")
    scanned = horizon if sigma.length is None else min(horizon, sigma.length)
    bases = [base_at(sigma, n) for n in range(1, scanned + 1)]
    witnesses = {
        p: tuple(n for n, b in enumerate(bases, start=1) if b % p == 0)
        for p in primes_up_to(prime_bound)
    }
    return CoverageReport(sigma, prime_bound, horizon, scanned, witnesses)


class DigitKind(str, Enum):
    CONSTANT_ONE = "one"
    EXPLICIT = "explicit"
    EVENTUALLY_ZERO = "eventually_zero"
    EVENTUALLY_MAX = "eventually_max"


@dataclass(frozen=True)
class DigitRule:
    """The digits ``a_n`` for ``n >= 1`` as a total function of ``n``.

    ``EXPLICIT`` is a finite list; ``EVENTUALLY_ZERO`` is a prefix followed
    by zeros; ``EVENTUALLY_MAX`` is a prefix of length ``start - 1``
    followed by ``a_n = b_n - 1`` from index ``start`` on.
    """

    kind: DigitKind
    digits: tuple = ()
    start: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DigitKind(self.kind))
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if any(d < 0 for d in self.digits):
            raise SpecError("digits must be nonnegative")
        if self.kind is DigitKind.EVENTUALLY_MAX:
            start = len(self.digits) + 1 if self.start is None else self.start
            if start != len(self.digits) + 1:
                raise SpecError(
                    f"eventually-max prefix must hold exactly start-1={start - 1} digits, "
                    f"got {len(self.digits)}"
                )
            object.__setattr__(self, "start", start)
        elif self.kind is DigitKind.EVENTUALLY_ZERO:
            object.__setattr__(self, "start", len(self.digits) + 1)
        elif self.start is not None:
            raise SpecError(f"start index is meaningless for {self.kind.value}")
        if self.kind is DigitKind.CONSTANT_ONE and self.digits:
            raise SpecError("constant-one rule takes no digits")
        if self.kind is DigitKind.EXPLICIT and not self.digits:
            raise SpecError("explicit digit list is empty")

    @classmethod
    def constant_one(cls):
        return cls(DigitKind.CONSTANT_ONE)

    @classmethod
    def explicit(cls, digits):
        return cls(DigitKind.EXPLICIT, tuple(digits))

    @classmethod
    def eventually_zero(cls, prefix=()):
        return cls(DigitKind.EVENTUALLY_ZERO, tuple(prefix))

    @classmethod
    def eventually_max(cls, prefix=(), start=None):
        return cls(DigitKind.EVENTUALLY_MAX, tuple(prefix), start)

    @property
    def length(self) -> Optional[int]:
        return len(self.digits) if self.kind is DigitKind.EXPLICIT else None

    def digit_at(self, n: int, sigma: BaseSequenceSpec) -> int:
        if n < 1:
            raise ValueError(f"digit index must be >= 1, got {n}")
        kind = self.kind
        if kind is DigitKind.CONSTANT_ONE:
            return 1
        if n <= len(self.digits):
            return self.digits[n - 1]
        if kind is DigitKind.EVENTUALLY_ZERO:
            return 0
        if kind is DigitKind.EVENTUALLY_MAX:
            return base_at(sigma, n) - 1
        raise IndexBeyondExplicitList(
            f"a_{n} requested but the explicit digit list has {len(self.digits)} entries"
        )

    def to_json(self) -> dict:
        if self.kind is DigitKind.CONSTANT_ONE:
            return {"digits": "one"}
        out = {"digits": list(self.digits)}
        if self.kind is DigitKind.EVENTUALLY_ZERO:
            out["tail"] = "zero"
        elif self.kind is DigitKind.EVENTUALLY_MAX:
            out["tail"] = "max"
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DigitRule":
        digits = data.get("digits", [])
        tail = data.get("tail")
        if digits == "one":
            if tail is not None:
                raise SpecError("constant-one digits take no tail")
            return cls.constant_one()
        if not isinstance(digits, list):
            raise SpecError(f"digits must be a list or \"one\", got {digits!r}")
        if tail is None:
            return cls.explicit(digits)
        if tail == "zero":
            return cls.eventually_zero(digits)
        if tail == "max":
            return cls.eventually_max(digits)
        raise SpecError(f"tail must be \"zero\" or \"max\", got {tail!r}")


@dataclass(frozen=True)
class Violation:
    n: int
    digit: int
    base: int
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    horizon: int
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "violations": [
                {"n": v.n, "digit": v.digit, "base": v.base, "reason": v.reason}
                for v in self.violations
            ],
            "verdict": "pass" if self.passed else "fail",
        }


def validate_prefix(digits: DigitRule, sigma: BaseSequenceSpec, horizon: int) -> ValidationReport:
    """Check ``b_n >= 2`` and ``0 <= a_n <= b_n - 1`` for ``n <= horizon``."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    found = []
    for n in range(1, horizon + 1):
        b = base_at(sigma, n)
        a = digits.digit_at(n, sigma)
        if b < 2:
            found.append(Violation(n, a, b, "base below 2"))
        elif not 0 <= a <= b - 1:
            found.append(Violation(n, a, b, f"digit outside [0, {b - 1}]"))
    return ValidationReport(horizon, tuple(found))


def validate_digits(series, horizon: int = DEFAULT_VALIDATION_HORIZON) -> ValidationReport:
    """Validate the digit/base prefix of a Cantor series."""
    return validate_prefix(series.digits, series.sigma, horizon)


def kernel_kind(sigma: BaseSequenceSpec) -> int:
    return _KERNEL_KIND[sigma.kind]


def load_sequence_spec(path) -> BaseSequenceSpec:
    with open(path) as fh:
        return BaseSequenceSpec.from_json(json.load(fh))
