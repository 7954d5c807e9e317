"""Compare the compiled and pure-Python kernels on the workloads that dominate.

    python benchmarks/bench_kernels.py [--samples N] [--qmax Q]

Both backends run the same inputs and their outputs are checked for
equality before timings are reported.
"""

import argparse
import random
import time
from fractions import Fraction

from cantorseries import _pykernels

try:
    from cantorseries import _ckernels
except ImportError:
    _ckernels = None


def workloads(samples, qmax, seed):
    rng = random.Random(seed)
    xs = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)) for _ in range(samples)]

    def round_trip(k):
        out = []
        for x in xs:
            digits, rest = k.factorial_extract(x.numerator % x.denominator, x.denominator, x.denominator)
            out.append((k.successor_resum(digits, 2), rest))
        return out

    def d_table(k):
        return [k.d_scan(q, _pykernels.KIND_SUCCESSOR, 1, (), 4 * q) for q in range(2, qmax + 1)]

    def d_table_pow5(k):
        return [k.d_scan(q, _pykernels.KIND_SUCCESSOR_POW, 5, (), 4 * q) for q in range(2, qmax + 1)]

    def s_table(k):
        return [k.factorial_scan(q, q) for q in range(1, qmax + 1)]

    return {
        f"factorial round trip ({samples} rationals)": round_trip,
        f"D(q, successor), q <= {qmax}": d_table,
        f"D(q, successor^5), q <= {qmax}": d_table_pow5,
        f"S(q), q <= {qmax}": s_table,
    }


def timed(fn, kernel):
    start = time.perf_counter()
    result = fn(kernel)
    return time.perf_counter() - start, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--qmax", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=20261016)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    print(f"{'workload':42s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, fn in workloads(args.samples, args.qmax, args.seed).items():
        t_py, r_py = timed(fn, _pykernels)
        t_c, r_c = timed(fn, _ckernels)
        if r_py != r_c:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:42s} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
