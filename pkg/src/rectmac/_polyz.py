"""Dense univariate polynomials over Z stored as tuples (low degree first).

The zero polynomial is ``()`` and no tuple carries a trailing zero.  These
helpers back :class:`rectmac.exactq.RatFuncQ`; nothing here allocates objects
beyond tuples and Python ints.
"""
from __future__ import annotations

from math import gcd, isqrt

Poly = tuple  # tuple[int, ...]

ONE: Poly = (1,)
ZERO: Poly = ()

# below this length schoolbook convolution beats Kronecker packing
_KRONECKER_MIN = 10


def trim(c) -> Poly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def monomial(k: int, c: int = 1) -> Poly:
    return (0,) * k + (c,) if c else ()


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    r = list(a)
    for i, x in enumerate(b):
        r[i] += x
    return trim(r) if len(a) == len(b) else tuple(r)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def scale(a: Poly, c: int) -> Poly:
    if not c:
        return ()
    return tuple(x * c for x in a)


def shift(a: Poly, k: int) -> Poly:
    """Multiply by q**k (k >= 0)."""
    return (0,) * k + a if a else ()


def trailing_zeros(a: Poly) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    return 0


def content(a: Poly) -> int:
    return gcd(*a)


def primitive(a: Poly) -> Poly:
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return a
    c = gcd(*a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def is_monomial(a: Poly) -> bool:
    return len(a) >= 1 and not any(a[:-1])


def evaluate(a: Poly, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


# -- multiplication -------------------------------------------------------

def _schoolbook(a: Poly, b: Poly) -> Poly:
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return trim(r)


def _pack_signed(a: Poly, nbytes: int) -> int:
    # evaluate at X = 256**nbytes using biased digits, then remove the bias
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in a)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * len(a), "little")
    return int.from_bytes(raw, "little") - bias


def _unpack_signed(v: int, nbytes: int, length: int) -> Poly:
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * length, "little")
    data = (v + bias).to_bytes(nbytes * length, "little")
    return trim(
        [int.from_bytes(data[i:i + nbytes], "little") - half for i in range(0, nbytes * length, nbytes)]
    )


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    la, lb = len(a), len(b)
    if la == 1:
        return scale(b, a[0])
    if lb == 1:
        return scale(a, b[0])
    if min(la, lb) < _KRONECKER_MIN:
        return _schoolbook(a, b)
    bound = max(map(abs, a)) * max(map(abs, b)) * min(la, lb)
    nbytes = (bound.bit_length() + 2) // 8 + 1
    return _unpack_signed(_pack_signed(a, nbytes) * _pack_signed(b, nbytes), nbytes, la + lb - 1)


def power(a: Poly, n: int) -> Poly:
    r = ONE
    while n:
        if n & 1:
            r = mul(r, a)
        n >>= 1
        if n:
            a = mul(a, a)
    return r


# -- division -------------------------------------------------------------

def divexact(a: Poly, b: Poly):
    """Return ``a / b`` in Z[q], or ``None`` if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ()
    lb = len(b)
    if lb == 1:
        c = b[0]
        if any(x % c for x in a):
            return None
        return tuple(x // c for x in a)
    la = len(a)
    if lb > la:
        return None
    r = list(a)
    lc = b[-1]
    quo = [0] * (la - lb + 1)
    for i in range(la - lb, -1, -1):
        c = r[i + lb - 1]
        if c:
            qc, rem = divmod(c, lc)
            if rem:
                return None
            quo[i] = qc
            for j in range(lb - 1):
                r[i + j] -= qc * b[j]
    if any(r[:lb - 1]):
        return None
    return tuple(quo)


def divide(a: Poly, b: Poly) -> Poly:
    q = divexact(a, b)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


def pseudo_rem(a: Poly, b: Poly) -> Poly:
    r = list(a)
    lb = len(b)
    lc = b[-1]
    while len(r) >= lb:
        c = r[-1]
        r = [x * lc for x in r]
        off = len(r) - lb
        for j in range(lb):
            r[off + j] -= c * b[j]
        r = list(trim(r))
    return tuple(r)


# -- gcd ------------------------------------------------------------------

def _interpolate(v: int, x: int) -> Poly:
    out = []
    half = x // 2
    while v:
        d = v % x
        if d > half:
            d -= x
        out.append(d)
        v = (v - d) // x
    return tuple(out)


def _heuristic_gcd(f: Poly, g: Poly):
    fn = max(map(abs, f))
    gn = max(map(abs, g))
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f[-1]), gn // abs(g[-1])) + 2)
    for _ in range(6):
        ff = evaluate(f, x)
        gg = evaluate(g, x)
        if ff and gg:
            hv = gcd(ff, gg)
            h = primitive(_interpolate(hv, x))
            if h and divexact(f, h) is not None and divexact(g, h) is not None:
                return h
            cf = _interpolate(ff // hv, x)
            if cf:
                h = divexact(f, cf)
                if h is not None:
                    h = primitive(h)
                    if divexact(g, h) is not None:
                        return h
            cg = _interpolate(gg // hv, x)
            if cg:
                h = divexact(g, cg)
                if h is not None:
                    h = primitive(h)
                    if divexact(f, h) is not None:
                        return h
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _prs_gcd(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = pseudo_rem(f, g)
        f, g = g, primitive(r)
    return primitive(f)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient (content ignored)."""
    if not a:
        return primitive(b) if b else ONE
    if not b:
        return primitive(a)
    ta, tb = trailing_zeros(a), trailing_zeros(b)
    t = min(ta, tb)
    a, b = a[ta:], b[tb:]
    if len(a) == 1 or len(b) == 1:
        return monomial(t)
    a, b = primitive(a), primitive(b)
    if a == b:
        h = a
    else:
        h = _heuristic_gcd(a, b)
        if h is None:
            h = _prs_gcd(a, b)
    return shift(h, t) if t else h
