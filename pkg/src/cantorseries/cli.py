"""Command-line front end.

Exit status: 0 success/pass, 1 certified failure, 2 undecided or search
exhausted, 3 usage or configuration error. Reports go to stdout, logs
and error messages to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import kernels
from .cantor_core import (
    certified_value,
    classify_prefix,
    nested_interval,
    partial_sum_pair,
)
from .constants import resolve_series, resolve_sigma
from .dfunc import d_row
from .errors import (
    CantorError,
    HorizonExhausted,
    IndexBeyondExplicitList,
    PrecisionUnreachable,
    SpecError,
    UndecidedAtDepth,
)
from .expansion import cantor_digits, expansion_json, factorial_digits
from .measure import Status, compare_smarandache, half_condition, verify_measure
from .rational import decimal_display, parse_rational, to_exact_str
from .sequences import (
    DEFAULT_PRIME_BOUND,
    DEFAULT_VALIDATION_HORIZON,
    check_prime_coverage,
    cumulative_product,
    validate_digits,
)

log = logging.getLogger("cantorseries")

EXIT_OK, EXIT_FAIL, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _nonzero_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value == 0:
        raise argparse.ArgumentTypeError("q must be nonzero")
    return value


def _common(defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without overriding values given earlier
    parent = _Parser(add_help=False)
    pick = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parent.add_argument("--format", choices=("json", "csv", "plain"), default=pick("json"))
    parent.add_argument("--digits", type=int, default=pick(15), help="decimal display digits")
    parent.add_argument("-v", "--verbose", action="store_true", default=pick(False))
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common(defaults=False)
    parser = _Parser(prog="cantorseries", description=__doc__.splitlines()[0], parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("digits", parents=[common], help="digit/base table")
    p.add_argument("series")
    p.add_argument("--n", type=_positive_int, default=10)

    p = sub.add_parser("value", parents=[common], help="certified enclosure of the value")
    p.add_argument("series")
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--max-depth", type=_positive_int, default=200)

    p = sub.add_parser("interval", parents=[common], help="nested interval I_n")
    p.add_argument("series")
    p.add_argument("--n", type=_positive_int, required=True)

    p = sub.add_parser("dfunc", parents=[common], help="D(q, sigma) and S(q)")
    p.add_argument("q", type=_nonzero_int)
    p.add_argument("--sigma", default="successor")
    p.add_argument("--horizon", type=_positive_int)

    p = sub.add_parser("verify-measure", parents=[common], help="certified irrationality-measure scan")
    p.add_argument("series")
    p.add_argument("--qmax", type=_positive_int, required=True)
    p.add_argument("--neighbors", type=_positive_int, default=2)
    p.add_argument("--depth", type=_positive_int, default=60)

    p = sub.add_parser("expand", parents=[common], help="greedy digits of a rational")
    p.add_argument("x", type=_rational)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--factorial", action="store_true")
    group.add_argument("--sigma")
    p.add_argument("--max-terms", type=_positive_int, default=1000)

    p = sub.add_parser("check-hypotheses", parents=[common], help="digit, coverage and theta_n checks")
    p.add_argument("series")
    p.add_argument("--horizon", type=_positive_int, default=DEFAULT_VALIDATION_HORIZON)
    p.add_argument("--pmax", type=_positive_int, default=DEFAULT_PRIME_BOUND)
    p.add_argument("--nmax", type=_positive_int, default=10)
    p.add_argument("--depth", type=_positive_int, default=60)

    p = sub.add_parser("compare-smarandache", parents=[common], help="S-based vs D-based bound for e")
    p.add_argument("--qmax", type=_positive_int, required=True)
    return parser


def _rows_csv(rows) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()})
    return buf.getvalue()


def _emit(payload, fmt, rows=None, csv_text=None, plain=None):
    if fmt == "json":
        return json.dumps(payload, separators=(",", ":"))
    if fmt == "csv":
        if csv_text is not None:
            return csv_text.rstrip("\n")
        return _rows_csv(rows if rows is not None else [payload]).rstrip("\n")
    if plain is not None:
        return plain
    return "\n".join(f"{k}: {v}" for k, v in payload.items())


def cmd_digits(args):
    theta = resolve_series(args.series)
    n_max = args.n if theta.defined_length is None else min(args.n, theta.defined_length)
    rows = []
    for n in range(1, n_max + 1):
        rows.append({"n": n, "a": theta.digit(n), "b": theta.base(n),
                     "B": str(cumulative_product(theta.sigma, n))})
    payload = {"series": theta.label, "a0": theta.a0, "rows": rows}
    plain = "\n".join([f"a0 = {theta.a0}"] + [f"n={r['n']} a={r['a']} b={r['b']} B={r['B']}" for r in rows])
    return EXIT_OK, _emit(payload, args.format, rows=rows, plain=plain)


def cmd_value(args):
    theta = resolve_series(args.series)
    enc = certified_value(theta, args.eps, args.max_depth)
    payload = {"series": theta.label, "eps": to_exact_str(args.eps), "enclosure": enc.to_json(args.digits)}
    flat = {"series": theta.label, **enc.to_json(args.digits)}
    plain = (f"{theta.label} in [{enc.lo}, {enc.hi}] (depth {enc.depth})\n"
             f"approx {decimal_display(enc.lo, args.digits)}... (truncated)")
    return EXIT_OK, _emit(payload, args.format, rows=[flat], plain=plain)


def cmd_interval(args):
    theta = resolve_series(args.series)
    iv = nested_interval(theta, args.n)
    a_n, b_n = partial_sum_pair(theta, args.n)
    payload = {"series": theta.label, "n": args.n, "interval": iv.to_json(args.digits),
               "A_n": str(a_n), "B_n": str(b_n), "digit": theta.digit(args.n)}
    flat = {"series": theta.label, "n": args.n, **iv.to_json(args.digits)}
    return EXIT_OK, _emit(payload, args.format, rows=[flat], plain=f"I_{args.n} = {iv}")


def cmd_dfunc(args):
    sigma = resolve_sigma(args.sigma)
    row = d_row(args.q, sigma, args.horizon)
    payload = row.to_json()
    status = EXIT_FAIL if row.identity_ok is False else EXIT_OK
    return status, _emit(payload, args.format)


def cmd_verify(args):
    theta = resolve_series(args.series)
    report = verify_measure(theta, args.qmax, args.neighbors, args.depth)
    counts = report.counts()
    log.info("verify-measure %s: %s", theta.label, counts)
    status = {Status.PASS: EXIT_OK, Status.FAIL: EXIT_FAIL, Status.UNDECIDED: EXIT_UNDECIDED}[report.verdict]
    plain = "\n".join(
        [f"{theta.label}: q=1..{args.qmax} verdict={report.verdict.value} {counts}"]
        + [f"q={r.q} D={r.bound.d_value} rhs={r.bound.rhs} verdict={r.verdict.value}" for r in report.rows]
    )
    return status, _emit(report.to_json(), args.format, csv_text=report.to_csv(), plain=plain)


def cmd_expand(args):
    if args.sigma:
        exp = cantor_digits(args.x, resolve_sigma(args.sigma), args.max_terms)
    else:
        exp = factorial_digits(args.x, args.max_terms)
    payload = expansion_json(exp, args.x)
    if args.sigma is None:
        payload["c"] = list(exp.factorial_digits)
    plain = f"({exp.a0}; {', '.join(map(str, exp.digits))}) terminated={exp.terminated}"
    return EXIT_OK, _emit(payload, args.format, plain=plain)


def cmd_check(args):
    theta = resolve_series(args.series)
    horizon = args.horizon if theta.defined_length is None else min(args.horizon, theta.defined_length)
    validation = validate_digits(theta, horizon)
    coverage = check_prime_coverage(theta.sigma, args.pmax, horizon)
    try:
        half = half_condition(theta, max(args.nmax, 2), args.depth)
    except UndecidedAtDepth as exc:
        half = exc.report
    classification = classify_prefix(theta, horizon)
    payload = {
        "series": theta.label,
        "digit_validation": validation.to_json(),
        "prime_coverage": coverage.to_json(),
        "half_condition": half.to_json() if half is not None else None,
        "classification": classification.to_json(),
    }
    if not validation.passed or not coverage.passed or (half is not None and half.status is Status.FAIL):
        status = EXIT_FAIL
    elif half is None or half.status is Status.UNDECIDED:
        status = EXIT_UNDECIDED
    else:
        status = EXIT_OK
    flat = {"series": theta.label, "digits_ok": validation.passed, "coverage_ok": coverage.passed,
            "half_condition": None if half is None else half.status.value,
            "classification": classification.verdict.value}
    return status, _emit(payload, args.format, rows=[flat])


def cmd_smarandache(args):
    rows = [r.to_json() for r in compare_smarandache(range(1, args.qmax + 1))]
    mismatches = [r["q"] for r in rows if r["equal"] is False]
    payload = {"qmax": args.qmax, "all_equal": not mismatches, "mismatches": mismatches, "rows": rows}
    status = EXIT_FAIL if mismatches else EXIT_OK
    plain = "\n".join(f"q={r['q']} S={r['S']} D={r['D']} equal={r['equal']}" for r in rows)
    return status, _emit(payload, args.format, rows=rows, plain=plain)


COMMANDS = {
    "digits": cmd_digits,
    "value": cmd_value,
    "interval": cmd_interval,
    "dfunc": cmd_dfunc,
    "verify-measure": cmd_verify,
    "expand": cmd_expand,
    "check-hypotheses": cmd_check,
    "compare-smarandache": cmd_smarandache,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=stderr, format="%(levelname)s %(name)s: %(message)s")
    log.info("kernel backend: %s", kernels.BACKEND)
    try:
        status, text = COMMANDS[args.command](args)
    except (HorizonExhausted, PrecisionUnreachable, IndexBeyondExplicitList) as exc:
        print(f"undecided: {exc}", file=stderr)
        return EXIT_UNDECIDED
    except (SpecError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except CantorError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_UNDECIDED
    print(text, file=stdout)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
