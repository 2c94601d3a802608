"""Exact arithmetic in Q[q] and the field Q(q).

``RatFuncQ`` is the coefficient field for everything else in the package
(``t`` is always specialised to ``q**beta``).  Values are immutable and kept
in a canonical form so that ``==`` and ``hash`` are structural:

* numerator and denominator are integer polynomials with no common factor,
* the joint content of both is 1,
* the denominator has a positive leading coefficient.

Denominators that are a single monomial ``c*q**k`` (Laurent polynomials in
``q``) never trigger a polynomial gcd.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import _polyz as pz

__all__ = [
    "PolyQ",
    "RatFuncQ",
    "PoleError",
    "rf_reduce",
    "qpoch",
    "qpoch_rf",
    "inv_poch_coeff",
    "complete_homogeneous_geometric",
    "limit_at_one",
    "Q",
    "ONE",
    "ZERO",
]


class PoleError(ArithmeticError):
    """Raised when a q -> 1 limit does not exist."""


class PolyQ:
    """Polynomial in ``q`` with rational coefficients, stored sparsely."""

    __slots__ = ("_terms",)

    def __init__(self, coeffs=None):
        terms = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for k, c in items:
                if k < 0:
                    raise ValueError("PolyQ exponents must be non-negative")
                c = Fraction(c)
                if c:
                    terms[k] = terms.get(k, 0) + c
                    if not terms[k]:
                        del terms[k]
        self._terms = dict(sorted(terms.items()))

    @classmethod
    def from_int_tuple(cls, c) -> "PolyQ":
        p = cls.__new__(cls)
        p._terms = {k: Fraction(x) for k, x in enumerate(c) if x}
        return p

    @property
    def coeffs(self) -> dict:
        return dict(self._terms)

    def degree(self) -> int:
        return max(self._terms) if self._terms else -1

    def is_zero(self) -> bool:
        return not self._terms

    def __getitem__(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other):
        other = _as_polyq(other)
        d = dict(self._terms)
        for k, c in other._terms.items():
            d[k] = d.get(k, 0) + c
        return PolyQ(d)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_polyq(other))

    def __rsub__(self, other):
        return _as_polyq(other) - self

    def __mul__(self, other):
        other = _as_polyq(other)
        d = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                d[i + j] = d.get(i + j, 0) + a * b
        return PolyQ(d)

    __rmul__ = __mul__

    def __call__(self, x):
        return sum((c * x**k for k, c in self._terms.items()), Fraction(0))

    def integer_form(self):
        """Return ``(den, poly)`` with ``self == poly / den`` and ``poly`` over Z."""
        if not self._terms:
            return 1, ()
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        dense = [0] * (self.degree() + 1)
        for k, c in self._terms.items():
            dense[k] = int(c * den)
        return den, tuple(dense)

    def serialize(self) -> str:
        return _terms_to_str(sorted(self._terms.items()))

    def __repr__(self):
        return f"PolyQ({self.serialize()})"

    def __str__(self):
        return _pretty(sorted(self._terms.items()))


def _as_polyq(x) -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyQ({0: x})
    raise TypeError(f"cannot convert {type(x).__name__} to PolyQ")


# -- RatFuncQ ------------------------------------------------------------------

def _canon_content(n, d):
    c = gcd(*n, *d)
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = tuple(x // c for x in n)
        d = tuple(x // c for x in d)
    return n, d


def _canonical(n, d):
    """Reduce integer polys ``n/d`` to canonical form."""
    if not d:
        raise ZeroDivisionError("zero denominator: not an element of Q(q)")
    if not n:
        return (), pz.ONE
    if len(d) == 1:
        return _canon_content(n, d)
    if pz.is_monomial(d):
        t = min(pz.trailing_zeros(n), len(d) - 1)
        if t:
            n, d = n[t:], d[t:]
        return _canon_content(n, d)
    g = pz.pgcd(n, d)
    if len(g) > 1:
        n, d = pz.divide(n, g), pz.divide(d, g)
    return _canon_content(n, d)


class RatFuncQ:
    """Reduced rational function in ``q`` with rational coefficients."""

    __slots__ = ("_n", "_d", "_h")

    def __init__(self, value=0):
        if isinstance(value, RatFuncQ):
            self._n, self._d = value._n, value._d
        elif isinstance(value, int):
            self._n, self._d = ((value,) if value else ()), pz.ONE
        elif isinstance(value, Fraction):
            self._n, self._d = ((value.numerator,) if value else ()), (value.denominator,)
        elif isinstance(value, PolyQ):
            den, p = value.integer_form()
            self._n, self._d = _canonical(p, (den,))
        else:
            raise TypeError(f"cannot build RatFuncQ from {type(value).__name__}")
        self._h = None

    @classmethod
    def _raw(cls, n, d) -> "RatFuncQ":
        r = cls.__new__(cls)
        r._n, r._d, r._h = n, d, None
        return r

    @classmethod
    def from_int_polys(cls, n, d=pz.ONE) -> "RatFuncQ":
        """Build from integer coefficient sequences (low degree first)."""
        n, d = _canonical(pz.trim(tuple(n)), pz.trim(tuple(d)))
        return cls._raw(n, d)

    @classmethod
    def q_power(cls, k: int) -> "RatFuncQ":
        if k >= 0:
            return cls._raw(pz.monomial(k), pz.ONE)
        return cls._raw(pz.ONE, pz.monomial(-k))

    # -- accessors
    @property
    def num(self) -> PolyQ:
        return PolyQ.from_int_tuple(self._n)

    @property
    def den(self) -> PolyQ:
        return PolyQ.from_int_tuple(self._d)

    @property
    def int_num(self) -> tuple:
        return self._n

    @property
    def int_den(self) -> tuple:
        return self._d

    def is_zero(self) -> bool:
        return not self._n

    def is_constant(self) -> bool:
        return len(self._n) <= 1 and len(self._d) == 1

    def is_laurent(self) -> bool:
        return pz.is_monomial(self._d)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self._n[0] if self._n else 0, self._d[0])

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncQ(other)
            else:
                return NotImplemented
        if not self._n:
            return other
        if not other._n:
            return self
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if d1 == d2:
            if d1 == pz.ONE:
                n = pz.add(n1, n2)
                if not n:
                    return ZERO
                return RatFuncQ._raw(*_canon_content(n, d1))
            return RatFuncQ._raw(*_canonical(pz.add(n1, n2), d1))
        if len(d1) == 1 and len(d2) == 1:
            a, b = d1[0], d2[0]
            g = gcd(a, b)
            n = pz.add(pz.scale(n1, b // g), pz.scale(n2, a // g))
            if not n:
                return ZERO
            return RatFuncQ._raw(*_canon_content(n, (a // g * b,)))
        if pz.is_monomial(d1) and pz.is_monomial(d2):
            k1, k2 = len(d1) - 1, len(d2) - 1
            a, b = d1[-1], d2[-1]
            g = gcd(a, b)
            k = max(k1, k2)
            n = pz.add(pz.shift(pz.scale(n1, b // g), k - k1), pz.shift(pz.scale(n2, a // g), k - k2))
            return RatFuncQ._raw(*_canonical(n, pz.monomial(k, a // g * b)))
        g = pz.pgcd(d1, d2)
        if len(g) == 1:
            n = pz.add(pz.mul(n1, d2), pz.mul(n2, d1))
            d = pz.mul(d1, d2)
            if not n:
                return ZERO
            # gcd(n, d) is trivial when the denominators are coprime
            return RatFuncQ._raw(*_canon_content(n, d))
        e1, e2 = pz.divide(d1, g), pz.divide(d2, g)
        n = pz.add(pz.mul(n1, e2), pz.mul(n2, e1))
        if not n:
            return ZERO
        g2 = pz.pgcd(n, g)
        d = pz.mul(d1, e2)
        if len(g2) > 1:
            n, d = pz.divide(n, g2), pz.divide(d, g2)
        return RatFuncQ._raw(*_canon_content(n, d))

    __radd__ = __add__

    def __neg__(self):
        return RatFuncQ._raw(pz.neg(self._n), self._d)

    def __sub__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncQ(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, int):
                if not other or not self._n:
                    return ZERO
                return RatFuncQ._raw(*_canon_content(pz.scale(self._n, other), self._d))
            if isinstance(other, Fraction):
                other = RatFuncQ(other)
            else:
                return NotImplemented
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if not n1 or not n2:
            return ZERO
        if len(d1) == 1 and len(d2) == 1:
            return RatFuncQ._raw(*_canon_content(pz.mul(n1, n2), (d1[0] * d2[0],)))
        if pz.is_monomial(d1) and pz.is_monomial(d2):
            return RatFuncQ._raw(*_canonical(pz.mul(n1, n2), pz.monomial(len(d1) + len(d2) - 2, d1[-1] * d2[-1])))
        if len(d2) > 1:
            g1 = pz.pgcd(n1, d2)
            if len(g1) > 1:
                n1, d2 = pz.divide(n1, g1), pz.divide(d2, g1)
        if len(d1) > 1:
            g2 = pz.pgcd(n2, d1)
            if len(g2) > 1:
                n2, d1 = pz.divide(n2, g2), pz.divide(d1, g2)
        return RatFuncQ._raw(*_canon_content(pz.mul(n1, n2), pz.mul(d1, d2)))

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncQ":
        if not self._n:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        n, d = self._d, self._n
        if d[-1] < 0:
            n, d = pz.neg(n), pz.neg(d)
        return RatFuncQ._raw(n, d)

    def __truediv__(self, other):
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncQ(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFuncQ(other) * self.inverse() if isinstance(other, (int, Fraction)) else NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = RatFuncQ._raw(pz.power(self._n, k), pz.power(self._d, k))
        return r

    def __eq__(self, other):
        if isinstance(other, RatFuncQ):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == RatFuncQ(other)
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self._n, self._d))
        return self._h

    def __bool__(self):
        return bool(self._n)

    # -- evaluation
    def __call__(self, x):
        x = Fraction(x)
        den = pz.evaluate(self._d, x)
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={x}")
        return Fraction(pz.evaluate(self._n, x)) / den

    def subs_power(self, k: int) -> "RatFuncQ":
        """Substitute ``q -> q**k`` (k >= 1)."""
        def spread(p):
            out = [0] * ((len(p) - 1) * k + 1) if p else []
            for i, c in enumerate(p):
                out[i * k] = c
            return tuple(out)
        return RatFuncQ._raw(spread(self._n), spread(self._d))

    # -- text
    def serialize(self) -> str:
        """Exact text form ``(c*q^k + ...)/(c*q^k + ...)``, ascending degree."""
        return f"({_int_terms(self._n)})/({_int_terms(self._d)})"

    @classmethod
    def parse(cls, text: str) -> "RatFuncQ":
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
        if m:
            return cls.from_int_polys(_parse_terms(m.group(1)), _parse_terms(m.group(2)))
        return cls.from_int_polys(_parse_terms(text))

    def __repr__(self):
        return f"RatFuncQ({self.serialize()!r})"

    def __str__(self):
        num = _pretty(list(enumerate(self._n)))
        if self._d == pz.ONE:
            return num
        den = _pretty(list(enumerate(self._d)))
        if sum(1 for c in self._n if c) > 1:
            num = f"({num})"
        if sum(1 for c in self._d if c) > 1 or "q" in den:
            den = f"({den})"
        return f"{num}/{den}"


ZERO = RatFuncQ._raw((), pz.ONE)
ONE = RatFuncQ._raw(pz.ONE, pz.ONE)
Q = RatFuncQ._raw((0, 1), pz.ONE)


def _int_terms(p) -> str:
    items = [(k, c) for k, c in enumerate(p) if c]
    if not items:
        return "0"
    return " + ".join(f"{c}*q^{k}" for k, c in items)


def _terms_to_str(items) -> str:
    if not items:
        return "0"
    return " + ".join(f"{c}*q^{k}" for k, c in items)


_TERM = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*\*\s*q\^(\d+)\s*$")


def _parse_terms(text: str):
    text = text.strip()
    if text == "0":
        return ()
    coeffs = {}
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"malformed polynomial term {chunk!r}")
        c = Fraction(m.group(1))
        if c.denominator != 1:
            raise ValueError("serialized RatFuncQ terms must have integer coefficients")
        k = int(m.group(2))
        coeffs[k] = coeffs.get(k, 0) + int(c)
    dense = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        dense[k] = c
    return tuple(dense)


def _pretty(items) -> str:
    parts = []
    for k, c in items:
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = f"{a}"
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def rf_reduce(num: PolyQ, den: PolyQ) -> RatFuncQ:
    """Canonical reduced form of ``num/den``."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator: not an element of Q(q)")
    a, pn = num.integer_form()
    b, pd = den.integer_form()
    # num/den = (pn/a) / (pd/b) = (pn*b) / (pd*a)
    return RatFuncQ.from_int_polys(pz.scale(pn, b), pz.scale(pd, a))


# -- q-Pochhammer symbols ---------------------------------------------------------

@lru_cache(maxsize=None)
def _poch_int(e: int, n: int, step: int):
    """Integer coefficients of prod_{k<n} (1 - q^(e+k*step)), e >= 0."""
    r = pz.ONE
    for k in range(n):
        r = pz.sub(r, pz.shift(r, e + k * step))
    return r


def qpoch(e: int, n: int):
    """``(q^e; q)_n``.  A :class:`PolyQ` for ``e >= 0``, else a :class:`RatFuncQ`."""
    if n < 0:
        raise ValueError("qpoch length must be non-negative; use qpoch_rf for negative lengths")
    if e >= 0:
        return PolyQ.from_int_tuple(_poch_int(e, n, 1))
    return qpoch_rf(e, n)


@lru_cache(maxsize=None)
def qpoch_rf(e: int, n: int, step: int = 1) -> RatFuncQ:
    """``(q^e; q^step)_n`` as a rational function.

    Negative ``e`` is handled by clearing ``q``-powers to a common monomial
    denominator.  Negative ``n`` uses ``(a; p)_{-n} = 1 / (a p^{-n}; p)_n``.
    """
    if n < 0:
        return qpoch_rf(e + n * step, -n, step).inverse()
    if e >= 0:
        return RatFuncQ._raw(_poch_int(e, n, step), pz.ONE)
    r = ONE
    for k in range(n):
        r = r * (ONE - RatFuncQ.q_power(e + k * step))
    return r


@lru_cache(maxsize=None)
def complete_homogeneous_geometric(m: int, beta: int) -> RatFuncQ:
    """``S_m(1, q, ..., q^(beta-1))`` by the recursion over the last variable."""
    # h[j] = S_j(1, ..., q^(i-1)) as integer polys
    h = [pz.ONE] + [()] * m
    for i in range(beta):
        new = list(h)
        for j in range(1, m + 1):
            new[j] = pz.add(h[j], pz.shift(new[j - 1], i))
        h = new
    return RatFuncQ._raw(h[m], pz.ONE) if h[m] else ZERO


def _second_expression(m: int, beta: int) -> RatFuncQ:
    total = ZERO
    for b in range(beta):
        total = total + RatFuncQ.q_power(b * m) / (qpoch_rf(-b, b) * qpoch_rf(1, beta - 1 - b))
    return total


@lru_cache(maxsize=None)
def inv_poch_coeff(m: int, beta: int, check: bool = True) -> RatFuncQ:
    """Coefficient of ``z^m`` in ``1/(z; q)_beta``, i.e. ``(q^beta; q)_m / (q; q)_m``.

    With ``check`` the result is compared against the complete homogeneous
    polynomial ``S_m(1, ..., q^(beta-1))`` and, when ``(beta, m) != (0, 0)``,
    against the partial-fraction sum.
    """
    if m < 0 or beta < 0:
        raise ValueError("m and beta must be non-negative")
    value = qpoch_rf(beta, m) / qpoch_rf(1, m)
    if check:
        if value != complete_homogeneous_geometric(m, beta):
            raise ArithmeticError(f"coefficient self-check failed for m={m}, beta={beta}")
        if (beta, m) != (0, 0) and value != _second_expression(m, beta):
            raise ArithmeticError(f"partial-fraction self-check failed for m={m}, beta={beta}")
    return value


def limit_at_one(f: RatFuncQ) -> Fraction:
    """Value of ``f`` as ``q -> 1``; raises :class:`PoleError` on a pole."""
    n, d = f.int_num, f.int_den
    while n and pz.evaluate(n, 1) == 0 and pz.evaluate(d, 1) == 0:
        n = pz.divide(n, (-1, 1))
        d = pz.divide(d, (-1, 1))
    dv = pz.evaluate(d, 1)
    if dv == 0:
        raise PoleError(f"{f} has a pole at q=1")
    return Fraction(pz.evaluate(n, 1), dv)
