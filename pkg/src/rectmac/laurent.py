"""Sparse Laurent polynomials over Q(q) and the q-Dyson product expansions.

Variables are ``(kind, index)`` pairs such as ``("z", 1)`` or ``("w", 2)``;
indices are 1-based.  A monomial is the sorted tuple of ``(var, exponent)``
pairs with nonzero exponents, so ``()`` is the constant monomial.

Large products of binomials ``1 - c q^k x^delta`` are expanded by
:func:`rectmac.kernels.expand_product`; everything else goes through the
dictionary arithmetic of :class:`LaurentPoly`.
"""
from __future__ import annotations

import json
from collections import defaultdict

import numpy as np

from . import _polyz as pz
from .exactq import ONE, ZERO, RatFuncQ, qpoch_rf
from .kernels import Constraint, Factor, expand_product

__all__ = [
    "LaurentPoly",
    "monomial",
    "var",
    "poch",
    "expand_factors",
    "expand_F",
    "dyson_factors",
    "B_prefactor",
    "B_poly",
    "split_terms",
    "split_terms_cleared",
    "split_identity_holds",
    "split_identity_cleared_holds",
    "interchange_holds",
    "cancel1_holds",
    "cancel2_holds",
    "zw_identity_holds",
    "an_identity_holds",
]

_KIND_ORDER = {"z": 0, "w": 1, "D": 2}


def _var_key(v):
    return (_KIND_ORDER.get(v[0], 9), v[0], v[1])


def monomial(exps) -> tuple:
    """Canonical monomial from a mapping ``var -> exponent``."""
    if isinstance(exps, dict):
        exps = exps.items()
    acc = defaultdict(int)
    for v, e in exps:
        acc[v] += e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: _var_key(t[0])))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return monomial(list(a) + list(b))


def _as_rf(c) -> RatFuncQ:
    return c if isinstance(c, RatFuncQ) else RatFuncQ(c)


class LaurentPoly:
    """Immutable-by-convention map ``monomial -> RatFuncQ``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in (terms.items() if isinstance(terms, dict) else terms):
                c = _as_rf(c)
                if c:
                    m = monomial(m) if not _is_canonical(m) else m
                    prev = self.terms.get(m)
                    c = c if prev is None else prev + c
                    if c:
                        self.terms[m] = c
                    else:
                        self.terms.pop(m, None)

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({(): c})

    # -- queries
    def coeff(self, m) -> RatFuncQ:
        if isinstance(m, dict):
            m = monomial(m)
        return self.terms.get(m, ZERO)

    def ct(self) -> RatFuncQ:
        return self.terms.get((), ZERO)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _as_rf(other)
            if not c:
                return _raw({})
            return _raw({m: v * c for m, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m)
                p = c1 * c2
                out[m] = p if v is None else v + p
        return _raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = LaurentPoly.constant(ONE)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def truncate(self, keep) -> "LaurentPoly":
        """Keep the monomials for which ``keep(exps_dict)`` is true."""
        return _raw({m: c for m, c in self.terms.items() if keep(dict(m))})

    # -- text / json
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: [(_var_key(v), e) for v, e in t[0]])

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = " ".join(f"{v[0]}{v[1]}^{e}" for v, e in m) or "1"
            out.append(f"({c.serialize()}) * {mono}")
        return " + ".join(out)

    def to_json(self) -> list:
        return [
            {"monomial": [[v[0], v[1], e] for v, e in m], "coeff": c.serialize()}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({monomial(((k, i), e) for k, i, e in t["monomial"]): RatFuncQ.parse(t["coeff"]) for t in data})

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


def _is_canonical(m) -> bool:
    return isinstance(m, tuple) and all(isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple) for x in m) and (
        list(m) == sorted(m, key=lambda t: _var_key(t[0]))
    ) and all(e for _, e in m) and len({v for v, _ in m}) == len(m)


def _raw(d) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p.terms = d
    return p


def var(kind: str, idx: int, e: int = 1) -> LaurentPoly:
    return _raw({monomial({(kind, idx): e}): ONE})


# -- kernel-backed products -----------------------------------------------------

def binomial_terms(delta: dict, k: int):
    """Terms of ``1 - q^k x^delta``."""
    return [({}, 1, 0), (delta, -1, k)]


def poch(delta: dict, shift: int, n: int) -> list:
    """Binomial factor term lists for ``(q^shift x^delta; q)_n``."""
    return [binomial_terms(delta, shift + j) for j in range(n)]


def geometric_terms(delta: dict, k: int, cap: int):
    """Terms of ``sum_{a=0}^{cap} (q^k x^delta)^a``."""
    return [({v: a * e for v, e in delta.items()}, 1, a * k) for a in range(cap + 1)]


def _row_to_rf(row, qoff) -> RatFuncQ:
    n = pz.trim(tuple(int(x) for x in row))
    if qoff >= 0:
        return RatFuncQ.from_int_polys(pz.shift(n, qoff), pz.ONE)
    return RatFuncQ.from_int_polys(n, pz.monomial(-qoff))


def expand_factors(variables, factor_terms, bounds=None, linear=(), scale=ONE) -> LaurentPoly:
    """Expand a product of factors given as term lists over ``variables``.

    ``bounds`` maps a variable to ``(lo, hi)`` (either may be ``None``) and
    ``linear`` is a sequence of ``(weights_dict, lo, hi)``; monomials outside
    these limits are dropped as early as the remaining factors allow.
    """
    variables = list(variables)
    index = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    factors = [
        Factor.from_terms(nv, [({index[v]: e for v, e in d.items()}, c, k) for d, c, k in terms])
        for terms in factor_terms
    ]
    big = 1 << 40
    cons = []
    for v, (lo, hi) in (bounds or {}).items():
        w = np.zeros(nv, dtype=np.int64)
        w[index[v]] = 1
        cons.append(Constraint(w, -big if lo is None else lo, big if hi is None else hi))
    for wd, lo, hi in linear:
        w = np.zeros(nv, dtype=np.int64)
        for v, e in wd.items():
            w[index[v]] = e
        cons.append(Constraint(w, -big if lo is None else lo, big if hi is None else hi))
    exps, coef, qoff = expand_product(factors, nv, cons)
    out = {}
    scale = _as_rf(scale)
    for i in range(exps.shape[0]):
        m = monomial(zip(variables, exps[i].tolist()))
        c = _row_to_rf(coef[i], qoff)
        if c:
            out[m] = c * scale if scale != ONE else c
    return _raw(out)


def _z(i):
    return ("z", i)


def _w(j):
    return ("w", j)


def dyson_factors(betas, t: int = 0, wcaps=None, skip=()):
    """Factor term lists of ``F_beta[s; t]`` (z-part omitting indices in ``skip``)."""
    s = len(betas)
    fac = []
    for i in range(1, s + 1):
        for j in range(i + 1, s + 1):
            if i in skip or j in skip:
                continue
            fac += poch({_z(i): 1, _z(j): -1}, 0, betas[i - 1])
            fac += poch({_z(j): 1, _z(i): -1}, 1, betas[j - 1])
    for j in range(1, t + 1):
        cap = wcaps[j - 1]
        for i in range(1, s + 1):
            for b in range(betas[i - 1]):
                fac.append(geometric_terms({_z(i): 1, _w(j): -1}, b, cap))
    return fac


def expand_F(betas, t: int = 0, wcaps=None, bounds=None, total_wcap=None) -> LaurentPoly:
    """Truncated expansion of ``F_beta[s; t]``.

    Every monomial with ``w_j`` inverse degree at most ``wcaps[j]`` (and total
    inverse w-degree at most ``total_wcap`` if given) is exact; others are
    dropped.  ``bounds`` optionally pins exponents, e.g. ``{("z", 1): (2, 2)}``.
    """
    betas = tuple(betas)
    s = len(betas)
    if t and wcaps is None:
        raise ValueError("wcaps required when t > 0")
    wcaps = tuple(wcaps or ())
    if len(wcaps) != t:
        raise ValueError("need one w cap per w variable")
    variables = [_z(i) for i in range(1, s + 1)] + [_w(j) for j in range(1, t + 1)]
    bnd = dict(bounds or {})
    for j in range(1, t + 1):
        lo, hi = bnd.get(_w(j), (None, None))
        lo = -wcaps[j - 1] if lo is None else max(lo, -wcaps[j - 1])
        bnd[_w(j)] = (lo, hi)
    linear = []
    if total_wcap is not None and t:
        linear.append(({_w(j): 1 for j in range(1, t + 1)}, -total_wcap, None))
    return expand_factors(variables, dyson_factors(betas, t, wcaps), bnd, linear)


# -- splitting -------------------------------------------------------------------

def B_prefactor(betas, a: int, b: int) -> RatFuncQ:
    """Scalar in front of ``B_{a,b}``; this is also its constant term."""
    s = len(betas)
    e = b * sum(betas[: a - 1]) + (b + 1) * sum(betas[a:s])
    return RatFuncQ.q_power(e) / (qpoch_rf(-b, b) * qpoch_rf(1, betas[a - 1] - b - 1))


def _B_factor_terms(betas, a: int, b: int):
    s = len(betas)
    ba = betas[a - 1]
    fac = []
    for i in range(1, a):
        d = {_z(a): 1, _z(i): -1}
        fac += poch(d, 1 - betas[i - 1], b)
        fac += poch(d, b + 1, ba - b)
    for j in range(a + 1, s + 1):
        d = {_z(a): 1, _z(j): -1}
        fac += poch(d, -betas[j - 1], b + 1)
        fac += poch(d, b + 1, ba - b - 1)
    return fac


def B_poly(betas, a: int, b: int) -> LaurentPoly:
    s = len(betas)
    variables = [_z(i) for i in range(1, s + 1)]
    return expand_factors(variables, _B_factor_terms(betas, a, b), scale=B_prefactor(betas, a, b))


def split_terms(betas, cap: int) -> dict:
    """``{(a, b): G_{a,b}}`` with the ``(1 - q^b z_a/w_1)^{-1}`` factor expanded to ``cap``."""
    betas = tuple(betas)
    s = len(betas)
    variables = [_z(i) for i in range(1, s + 1)] + [_w(1)]
    out = {}
    for a in range(1, s + 1):
        for b in range(betas[a - 1]):
            fac = _B_factor_terms(betas, a, b) + dyson_factors(betas, 0, skip=(a,))
            fac.append(geometric_terms({_z(a): 1, _w(1): -1}, b, cap))
            out[(a, b)] = expand_factors(variables, fac, {_w(1): (-cap, 0)}, scale=B_prefactor(betas, a, b))
    return out


def split_terms_cleared(betas) -> dict:
    """``{(a, b): H_{a,b}}``: the split terms multiplied by ``prod_i (z_i/w_1; q)_{beta_i}``."""
    betas = tuple(betas)
    s = len(betas)
    variables = [_z(i) for i in range(1, s + 1)] + [_w(1)]
    out = {}
    for a in range(1, s + 1):
        ba = betas[a - 1]
        for b in range(ba):
            fac = _B_factor_terms(betas, a, b) + dyson_factors(betas, 0, skip=(a,))
            d = {_z(a): 1, _w(1): -1}
            fac += [binomial_terms(d, k) for k in range(ba) if k != b]
            for i in range(1, s + 1):
                if i != a:
                    fac += poch({_z(i): 1, _w(1): -1}, 0, betas[i - 1])
            out[(a, b)] = expand_factors(variables, fac, scale=B_prefactor(betas, a, b))
    return out


def split_identity_holds(betas, cap: int) -> bool:
    """``sum G_{a,b} == F_beta[s; 1]`` through w_1-degree ``cap``."""
    lhs = expand_F(betas, 1, (cap,))
    rhs = LaurentPoly()
    for g in split_terms(betas, cap).values():
        rhs = rhs + g
    return lhs == rhs


def split_identity_cleared_holds(betas) -> bool:
    """The cleared form: ``prod_{i<j} (...) == sum_{a,b} H_{a,b}`` exactly."""
    lhs = expand_F(betas, 0)
    rhs = LaurentPoly()
    for h in split_terms_cleared(betas).values():
        rhs = rhs + h
    return lhs == rhs


# -- small formal identities -------------------------------------------------------

def interchange_holds(b: int, k: int, l: int) -> bool:
    # x = z_i/z_a with z_i -> z1, z_a -> z2
    x = {_z(1): 1, _z(2): -1}
    xi = {_z(1): -1, _z(2): 1}
    lhs = expand_factors([_z(1), _z(2)], poch(x, k, b) + poch(xi, l, b))
    rhs = expand_factors(
        [_z(1), _z(2)], poch(x, 1 - b - l, b) + poch(xi, 1 - b - k, b), scale=RatFuncQ.q_power(b * (l + k + b - 1))
    )
    return lhs == rhs


def cancel1_holds(beta_a: int, beta_i: int, b: int) -> bool:
    # z_a -> z1, z_i -> z2; cross-multiplied by the left denominator
    ai = {_z(1): 1, _z(2): -1}
    ia = {_z(1): -1, _z(2): 1}
    vs = [_z(1), _z(2)]
    lhs = expand_factors(vs, poch(ai, 1, beta_a) + poch(ia, 0, beta_i))
    rhs = expand_factors(
        vs,
        poch(ai, 1 - beta_i, b) + poch(ai, b + 1, beta_a - b) + poch(ia, -b, beta_i),
        scale=RatFuncQ.q_power(b * beta_i),
    )
    return lhs == rhs


def cancel2_holds(beta_a: int, beta_j: int, b: int) -> bool:
    aj = {_z(1): 1, _z(2): -1}
    ja = {_z(1): -1, _z(2): 1}
    vs = [_z(1), _z(2)]
    lhs = expand_factors(vs, poch(aj, 0, beta_a) + poch(ja, 1, beta_j))
    rhs = expand_factors(
        vs,
        poch(aj, -beta_j, b + 1) + poch(aj, b + 1, beta_a - b - 1) + poch(ja, -b, beta_j),
        scale=RatFuncQ.q_power((b + 1) * beta_j),
    )
    return lhs == rhs


def zw_identity_holds(beta: int) -> bool:
    """Partial fractions of ``1/(z; q)_beta`` after multiplying through by ``(z; q)_beta``."""
    vs = [_z(1)]
    d = {_z(1): 1}
    total = LaurentPoly()
    for b in range(beta):
        c = (qpoch_rf(-b, b) * qpoch_rf(1, beta - b - 1)).inverse()
        total = total + expand_factors(vs, [binomial_terms(d, k) for k in range(beta) if k != b], scale=c)
    return total == LaurentPoly.constant(ONE)


def an_identity_holds(m: int) -> bool:
    """``sum_i (z;q)_i/(q;q)_i z^(m-i) == (qz;q)_m/(q;q)_m`` in Q(q)[z]."""
    vs = [_z(1)]
    d = {_z(1): 1}
    lhs = LaurentPoly()
    for i in range(m + 1):
        lhs = lhs + expand_factors(vs, poch(d, 0, i), scale=qpoch_rf(1, i).inverse()) * var("z", 1, m - i)
    rhs = expand_factors(vs, poch(d, 1, m), scale=qpoch_rf(1, m).inverse())
    return lhs == rhs


def brute_coefficients(poly: LaurentPoly, pattern) -> list:
    """All ``(monomial, coeff)`` with ``pattern(exps_dict)`` true, sorted."""
    return [(m, c) for m, c in poly.sorted_terms() if pattern(dict(m))]
