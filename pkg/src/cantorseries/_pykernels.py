"""Pure-Python versions of the integer hot loops.

Reference semantics for ``_ckernels``; used when the extension is not
built, and for arguments outside the compiled kernels' 64-bit range.
"""

from math import gcd

KIND_SUCCESSOR = 0
KIND_SUCCESSOR_POW = 1
KIND_NATURAL = 2
KIND_EXPLICIT = 3


def d_scan(q, kind, k, bases, horizon):
    """Least n <= horizon with q | b_1...b_n, or 0 if there is none.

    The running product is kept modulo ``q``, which decides divisibility
    exactly. For explicit bases the scan stops at the end of ``bases``.
    """
    if q == 1:
        return 1 if horizon >= 1 and (kind != KIND_EXPLICIT or bases) else 0
    prod = 1
    if kind == KIND_EXPLICIT:
        horizon = min(horizon, len(bases))
    for n in range(1, horizon + 1):
        if kind == KIND_SUCCESSOR:
            b = n + 1
        elif kind == KIND_SUCCESSOR_POW:
            b = pow(n + 1, k, q)
        elif kind == KIND_NATURAL:
            b = n
        else:
            b = bases[n - 1]
        prod = prod * b % q
        if prod == 0:
            return n
    return 0


def factorial_scan(q, horizon):
    """Least n <= horizon with q | n!, or 0."""
    fact = 1 % q
    for n in range(1, horizon + 1):
        fact = fact * n % q
        if fact == 0:
            return n
    return 0


def factorial_extract(num, den, max_digits):
    """Greedy factorial digits of ``num/den`` with ``0 <= num < den``.

    Returns ``(digits, rest)``: digits c_2, c_3, ... (at most ``max_digits``)
    and the numerator of the final remainder ``rest/den``.
    """
    digits = []
    n = 1
    while num and len(digits) < max_digits:
        n += 1
        c, num = divmod(num * n, den)
        digits.append(c)
    return digits, num


def successor_resum(digits, first_base=2):
    """Exact sum of digits[i] / (first_base * ... * (first_base + i)).

    Evaluated from the last digit backwards so the running fraction stays
    small for expansions of rationals. Returns ``(num, den)`` reduced.
    """
    num, den = 0, 1
    for i in range(len(digits) - 1, -1, -1):
        b = first_base + i
        num = digits[i] * den + num
        # num/den was in lowest terms, so only a factor of b can cancel
        g = gcd(num, b)
        num //= g
        den *= b // g
    return num, den
