"""Built-in named objects and lookup of constants/sequences by name or file."""

from __future__ import annotations

import os

from .cantor_core import CantorSeries, load_series
from .errors import SpecError
from .sequences import BaseSequenceSpec, DigitRule, load_sequence_spec

SIGMA = BaseSequenceSpec.successor("sigma")
SIGMA5 = BaseSequenceSpec.successor_power(5, "sigma5")
ETA = BaseSequenceSpec.natural("eta")

# e = 2 + 1/2! + 1/3! + ...
E = CantorSeries(2, DigitRule.constant_one(), SIGMA, "e")
# xi = sum over n >= 1 of 1/(n!)^5 = 1 + 1/2^5 + 1/(2^5 3^5) + ...
XI = CantorSeries(1, DigitRule.constant_one(), SIGMA5, "xi")

SERIES = {"e": E, "xi": XI}
SIGMAS = {
    "successor": SIGMA,
    "sigma": SIGMA,
    "natural": ETA,
    "eta": ETA,
    "xi": SIGMA5,
    "sigma5": SIGMA5,
}


def resolve_sigma(name_or_path: str) -> BaseSequenceSpec:
    """Sequence by name (``successor``, ``eta``, ``successor_pow:K``, ...) or JSON file."""
    key = name_or_path.strip()
    if key in SIGMAS:
        return SIGMAS[key]
    if key.startswith("successor_pow:"):
        try:
            k = int(key.split(":", 1)[1])
        except ValueError as exc:
            raise SpecError(f"bad power in {key!r}") from exc
        return BaseSequenceSpec.successor_power(k)
    if os.path.exists(key):
        return load_sequence_spec(key)
    raise SpecError(f"unknown sequence {key!r}; expected a name or a JSON spec file")


def resolve_series(name_or_path: str) -> CantorSeries:
    key = name_or_path.strip()
    if key in SERIES:
        return SERIES[key]
    if os.path.exists(key):
        return load_series(key)
    raise SpecError(f"unknown constant {key!r}; expected e, xi or a JSON series file")
