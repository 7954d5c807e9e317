# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer hot loops; semantics match ``_pykernels`` exactly.

Arguments that do not fit the 64-bit fast paths are handed to the
pure-Python versions.
"""

from . import _pykernels

from cpython.long cimport PyLong_FromUnsignedLongLong
from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from libc.stdlib cimport free, malloc, realloc

ctypedef unsigned long long u64

cdef extern from *:
    """
    static int mul_ovf(unsigned long long a, unsigned long long b, unsigned long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int add_ovf(unsigned long long a, unsigned long long b, unsigned long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int mul_ovf(u64 a, u64 b, u64 *r) nogil
    int add_ovf(u64 a, u64 b, u64 *r) nogil

LIMIT32 = 1 << 32

# must match the codes in _pykernels
cdef enum:
    C_SUCCESSOR = 0
    C_SUCCESSOR_POW = 1
    C_NATURAL = 2
    C_EXPLICIT = 3


cdef inline u64 _powmod(u64 base, long long e, u64 m) nogil:
    cdef u64 r = 1 % m
    base %= m
    while e > 0:
        if e & 1:
            r = r * base % m
        base = base * base % m
        e >>= 1
    return r


cdef inline u64 _gcd(u64 a, u64 b) nogil:
    cdef u64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


def d_scan(q, int kind, k, bases, horizon):
    if q >= LIMIT32 or horizon >= LIMIT32 or (kind == C_SUCCESSOR_POW and k >= LIMIT32):
        return _pykernels.d_scan(q, kind, k, bases, horizon)
    cdef u64 m = q
    cdef long long h = horizon
    cdef long long n
    cdef long long kk = k
    cdef u64 prod = 1 % m
    cdef u64 b
    if m == 1:
        return 1 if h >= 1 and (kind != C_EXPLICIT or len(bases)) else 0
    if kind == C_EXPLICIT:
        h = min(h, len(bases))
        for n in range(1, h + 1):
            b = bases[n - 1] % q
            prod = prod * b % m
            if prod == 0:
                return n
        return 0
    with nogil:
        for n in range(1, h + 1):
            if kind == C_SUCCESSOR:
                b = <u64>(n + 1) % m
            elif kind == C_SUCCESSOR_POW:
                b = _powmod(<u64>(n + 1), kk, m)
            else:
                b = <u64>n % m
            prod = prod * b % m
            if prod == 0:
                break
    if prod == 0:
        return n
    return 0


def factorial_scan(q, horizon):
    if q >= LIMIT32 or horizon >= LIMIT32:
        return _pykernels.factorial_scan(q, horizon)
    cdef u64 m = q
    cdef long long h = horizon
    cdef long long n
    cdef u64 fact = 1 % m
    cdef bint hit = False
    with nogil:
        for n in range(1, h + 1):
            fact = fact * (<u64>n % m) % m
            if fact == 0:
                hit = True
                break
    return n if hit else 0


def factorial_extract(num, den, max_digits):
    if den >= LIMIT32 or num < 0 or max_digits >= LIMIT32:
        return _pykernels.factorial_extract(num, den, max_digits)
    cdef u64 r = num
    cdef u64 d = den
    cdef u64 t
    cdef u64 n = 1
    cdef Py_ssize_t limit = max_digits
    cdef Py_ssize_t count = 0, cap = 64, i
    cdef u64 *buf = <u64 *>malloc(cap * sizeof(u64))
    cdef u64 *grown
    cdef tuple out
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            while r and count < limit:
                if count == cap:
                    cap *= 2
                    grown = <u64 *>realloc(buf, cap * sizeof(u64))
                    if grown == NULL:
                        break
                    buf = grown
                n += 1
                t = r * n
                buf[count] = t // d
                r = t % d
                count += 1
        if r and count < limit:
            raise MemoryError()
        out = PyTuple_New(count)
        for i in range(count):
            item = PyLong_FromUnsignedLongLong(buf[i])
            Py_INCREF(item)
            PyTuple_SET_ITEM(out, i, item)
        return out, r
    finally:
        free(buf)


def successor_resum(digits, first_base=2):
    cdef tuple seq = tuple(digits)
    cdef Py_ssize_t size = len(seq)
    cdef Py_ssize_t i
    cdef u64 num = 0, den = 1, g, t, c, b
    if size == 0:
        return 0, 1
    if first_base < 1 or first_base + size >= LIMIT32:
        return _pykernels.successor_resum(seq, first_base)
    for i in range(size - 1, -1, -1):
        c_obj = seq[i]
        if c_obj < 0 or c_obj >= LIMIT32:
            return _pykernels.successor_resum(seq, first_base)
        c = c_obj
        b = <u64>first_base + <u64>i
        if mul_ovf(c, den, &t) or add_ovf(t, num, &t):
            return _pykernels.successor_resum(seq, first_base)
        # num/den is in lowest terms, so gcd(t, den * b) == gcd(t, b)
        g = _gcd(b, t % b)
        num = t // g
        if mul_ovf(den, b // g, &den):
            return _pykernels.successor_resum(seq, first_base)
    return num, den
