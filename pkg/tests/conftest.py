from fractions import Fraction
from math import prod

import mpmath
import pytest

from cantorseries import _pykernels

try:
    from cantorseries import _ckernels
except ImportError:  # extension not built
    _ckernels = None

mpmath.mp.dps = 150
E_MP = mpmath.e
XI_MP = mpmath.nsum(lambda n: 1 / mpmath.factorial(n) ** 5, [1, mpmath.inf])

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="compiled"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def direct_sum(a0, digits, bases):
    """Oracle: a0 + sum a_n / (b_1 ... b_n) term by term."""
    total = Fraction(a0)
    for n in range(1, len(digits) + 1):
        total += Fraction(digits[n - 1], prod(bases[:n]))
    return total


def mp_fraction(x):
    return mpmath.mpf(x.numerator) / x.denominator


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        ok, title, elapsed = module.RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f} s]")
