"""Exact Cantor-series arithmetic with certified enclosures.

Covers the divisibility index ``D(q, sigma)``, certified checks of
irrationality-measure bounds for ``e`` and ``xi = sum 1/(n!)^5``, and
greedy factorial/Cantor digit expansions of rationals.
"""

from .cantor_core import (
    CantorSeries,
    ComparisonResult,
    Order,
    PrefixClassification,
    Terminal,
    certified_compare,
    certified_value,
    classify_prefix,
    enclosure,
    nested_interval,
    nested_intervals,
    partial_sum,
    partial_sum_pair,
    tail_theta_n,
    value_enclosure,
)
from .constants import E, ETA, SIGMA, SIGMA5, XI, resolve_series, resolve_sigma
from .dfunc import DQuery, d_function, d_row, smarandache
from .errors import (
    CantorError,
    HorizonExhausted,
    IndexBeyondExplicitList,
    PrecisionUnreachable,
    PreconditionNotCertified,
    SpecError,
    UndecidedAtDepth,
)
from .expansion import DigitExpansion, cantor_digits, factorial_digits, factorial_value, resum
from .kernels import BACKEND
from .measure import (
    BoundRule,
    MeasureBound,
    MeasureReport,
    Status,
    best_approx_at_depth,
    compare_smarandache,
    half_condition,
    measure_bound,
    recheck_row,
    verify_measure,
)
from .rational import ExactRational, RationalInterval, decimal_display, parse_rational
from .sequences import (
    BaseKind,
    BaseSequenceSpec,
    DigitKind,
    DigitRule,
    base_at,
    check_prime_coverage,
    cumulative_product,
    validate_digits,
)

__version__ = "0.1.0"
