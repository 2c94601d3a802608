"""Symmetric functions over Q(q) in the power-sum basis, with ``t = q**beta``.

The scalar product is ``<p_lam, p_mu> = delta z_lam eps_lam`` with
``eps_n = (1 - q^n)/(1 - q^(n beta))``.  Generalized complete functions are
``Q_n = sum_{nu |- n} p_nu / (z_nu eps_nu)``; note ``1/eps_nu`` is a
polynomial in q, so products of ``Q_n`` only ever carry integer
denominators.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, gcd as igcd

from . import _polyz as pz
from .exactq import ONE, ZERO, RatFuncQ, limit_at_one
from .partitions import (
    conjugate,
    dominates,
    is_submultiset,
    multiplicities,
    multiset_diff,
    partition_list,
    z_lambda,
)

__all__ = [
    "SymFunc",
    "eps",
    "eps_inv",
    "eps_part",
    "tau",
    "qn",
    "g",
    "scalar",
    "adjoint_apply",
    "lowering_apply",
    "to_g_basis",
    "from_g_basis",
    "macdonald_gs",
    "norm_closed",
    "schur_jt",
    "limit_sym",
    "jack_qn",
    "jack_g",
    "jack_scalar",
    "jack_gs",
    "SingularSystemError",
]


class SingularSystemError(ArithmeticError):
    pass


def _rf(c) -> RatFuncQ:
    return c if isinstance(c, RatFuncQ) else RatFuncQ(c)


def _merge(lam, mu) -> tuple:
    if not lam:
        return mu
    if not mu:
        return lam
    return tuple(sorted(lam + mu, reverse=True))


class SymFunc:
    """Sparse power-sum expansion ``{partition: RatFuncQ}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for lam, c in terms.items():
                c = _rf(c)
                if c:
                    lam = tuple(lam)
                    prev = self.terms.get(lam)
                    c = c if prev is None else prev + c
                    if c:
                        self.terms[lam] = c
                    else:
                        del self.terms[lam]

    @classmethod
    def p(cls, lam) -> "SymFunc":
        return _raw({tuple(lam): ONE})

    @classmethod
    def one(cls) -> "SymFunc":
        return _raw({(): ONE})

    @property
    def grade(self):
        ws = {sum(lam) for lam in self.terms}
        if len(ws) == 1:
            return ws.pop()
        return 0 if not ws else None

    def coeff(self, lam) -> RatFuncQ:
        return self.terms.get(tuple(lam), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def homogeneous_part(self, n: int) -> "SymFunc":
        return _raw({lam: c for lam, c in self.terms.items() if sum(lam) == n})

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            v = out.get(lam)
            v = c if v is None else v + c
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return _raw(out)

    def __neg__(self):
        return _raw({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = _rf(c)
        if not c:
            return _raw({})
        if c == ONE:
            return self
        return _raw({lam: v * c for lam, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = {}
        for mu, c2 in b.items():
            for lam, c1 in a.items():
                key = _merge(lam, mu)
                p = c1 * c2
                v = out.get(key)
                out[key] = p if v is None else v + p
        return _raw({k: v for k, v in out.items() if v})

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc({lam: fn(c) for lam, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0]), reverse=False)

    def to_json(self, beta=None, **extra) -> dict:
        d = {
            "basis": "p",
            "beta": beta,
            "terms": [{"partition": list(lam), "coeff": c.serialize()} for lam, c in self.sorted_terms()],
        }
        d.update(extra)
        return d

    @classmethod
    def from_json(cls, data) -> "SymFunc":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("basis", "p") != "p":
            raise ValueError("only the power-sum basis is supported")
        return cls({tuple(t["partition"]): RatFuncQ.parse(t["coeff"]) for t in data["terms"]})

    def to_text(self, basis_name: str = "p") -> str:
        return _render(self.sorted_terms(), basis_name)

    def __repr__(self):
        return f"SymFunc({self.to_text()})"


def _render(items, name) -> str:
    if not items:
        return "0"
    out = []
    for lam, c in items:
        sym = f"{name}[{','.join(map(str, lam))}]" if lam else "1"
        if c == ONE:
            body, sign = sym, "+"
        elif c == -ONE:
            body, sign = sym, "-"
        else:
            txt = str(c)
            if txt.startswith("-") and "+" not in txt[1:] and " - " not in txt[1:]:
                sign, txt = "-", txt[1:]
            else:
                sign = "+"
            if " " in txt:
                txt = f"({txt})"
            body = txt if not lam else f"{txt}*{sym}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _raw(d) -> SymFunc:
    f = SymFunc.__new__(SymFunc)
    f.terms = d
    return f


# -- scalars ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def eps(n: int, beta: int) -> RatFuncQ:
    return RatFuncQ.from_int_polys(pz.sub(pz.ONE, pz.monomial(n)), pz.sub(pz.ONE, pz.monomial(n * beta)))


@lru_cache(maxsize=None)
def eps_inv(n: int, beta: int) -> RatFuncQ:
    """``1/eps_n = 1 + q^n + ... + q^(n(beta-1))``."""
    c = [0] * (n * (beta - 1) + 1)
    for j in range(beta):
        c[n * j] = 1
    return RatFuncQ.from_int_polys(c)


@lru_cache(maxsize=None)
def eps_part(lam, beta: int) -> RatFuncQ:
    r = ONE
    for p in lam:
        r = r * eps(p, beta)
    return r


@lru_cache(maxsize=None)
def tau(n: int, beta: int) -> RatFuncQ:
    """``(q^(-n beta) - q^(n beta))/(1 - q^n)`` as a Laurent polynomial."""
    c = [0] * (n * (2 * beta - 1) + 1)
    for j in range(2 * beta):
        c[n * j] = 1
    return RatFuncQ.from_int_polys(c, pz.monomial(n * beta))


# -- generators -------------------------------------------------------------------

@lru_cache(maxsize=None)
def qn(n: int, beta: int) -> SymFunc:
    """One-row function ``Q_n(q, q^beta)``; zero for ``n < 0``."""
    if n < 0:
        return _raw({})
    if n == 0:
        return SymFunc.one()
    out = {}
    for nu in partition_list(n):
        c = ONE
        for p in nu:
            c = c * eps_inv(p, beta)
        out[nu] = c * RatFuncQ(Fraction(1, z_lambda(nu)))
    return _raw(out)


@lru_cache(maxsize=None)
def g(lam, beta: int) -> SymFunc:
    lam = tuple(lam)
    if any(p < 0 for p in lam):
        return _raw({})
    parts = tuple(sorted((p for p in lam if p), reverse=True))
    if not parts:
        return SymFunc.one()
    if len(parts) == 1:
        return qn(parts[0], beta)
    return g(parts[:-1], beta) * qn(parts[-1], beta)


def scalar(f: SymFunc, h: SymFunc, beta: int) -> RatFuncQ:
    total = ZERO
    small, big = (f, h) if len(f) <= len(h) else (h, f)
    for lam, c in small.terms.items():
        d = big.terms.get(lam)
        if d is not None:
            total = total + c * d * eps_part(lam, beta) * z_lambda(lam)
    return total


def _pstar_on_p(lam, mu, beta):
    """``p_lam^* . p_mu`` as ``(coeff, rest)`` or ``None``."""
    if not is_submultiset(lam, mu):
        return None
    mm = multiplicities(mu)
    c = ONE
    for n, a in multiplicities(lam).items():
        m = mm[n]
        c = c * (eps(n, beta) ** a) * (n**a * factorial(m) // factorial(m - a))
    return c, multiset_diff(mu, lam)


def adjoint_apply(f: SymFunc, u: SymFunc, beta: int) -> SymFunc:
    """``f^*.u``, the adjoint of multiplication by ``f``."""
    out = {}
    for lam, c in f.terms.items():
        for mu, d in u.terms.items():
            r = _pstar_on_p(lam, mu, beta)
            if r is None:
                continue
            k, rest = r
            v = c * d * k
            prev = out.get(rest)
            out[rest] = v if prev is None else prev + v
    return _raw({k: v for k, v in out.items() if v})


def lowering_apply(L, lam, beta: int) -> SymFunc:
    """Apply ``L(D_1, ..., D_s)`` to ``Q_{lam_1} ... Q_{lam_s}``."""
    lam = tuple(lam)
    s = len(lam)
    grouped = {}
    for m, c in L.terms.items():
        shift = [0] * s
        for (kind, idx), e in m:
            if kind != "D":
                raise ValueError(f"lowering expression contains non-D variable {kind}{idx}")
            shift[idx - 1] = e
        sub = [lam[i] - shift[i] for i in range(s)]
        if min(sub, default=0) < 0:
            continue
        key = tuple(sorted((x for x in sub if x), reverse=True))
        prev = grouped.get(key)
        grouped[key] = c if prev is None else prev + c
    return from_g_basis({k: v for k, v in grouped.items() if v}, beta)


def from_g_basis(coeffs: dict, beta: int) -> SymFunc:
    out = _raw({})
    for mu, c in sorted(coeffs.items()):
        out = out + g(mu, beta).scale(c)
    return out


def to_g_basis(f: SymFunc, beta: int, gen=None) -> dict:
    """Coefficients in the ``g`` basis by triangular solve on partition length."""
    gen = gen or (lambda mu: g(mu, beta))
    rest = dict(f.terms)
    out = {}
    while rest:
        mu = min(rest, key=lambda lam: (len(lam), lam))
        gm = gen(mu)
        c = rest[mu] / gm.terms[mu]
        out[mu] = c
        for lam, v in gm.terms.items():
            w = rest.get(lam, ZERO) - c * v
            if w:
                rest[lam] = w
            else:
                rest.pop(lam, None)
    return out


# -- Gram-Schmidt -----------------------------------------------------------------

def _row_to_int(row):
    """Scale a row of RatFuncQ by a common denominator; return integer polys."""
    L = pz.ONE
    cont = 1
    for c in row:
        if not c:
            continue
        d = c.int_den
        k = pz.content(d)
        cont = cont * k // igcd(cont, k)
        dp = pz.primitive(d)
        if len(dp) > 1:
            h = pz.pgcd(L, dp)
            L = pz.mul(L, pz.divide(dp, h))
    out = []
    for c in row:
        if not c:
            out.append(())
            continue
        d = c.int_den
        k = pz.content(d)
        factor = pz.divide(L, pz.primitive(d))
        out.append(pz.scale(pz.mul(c.int_num, factor), cont // k * (1 if d[-1] > 0 else -1)))
    return out


def solve_linear(A, b):
    """Solve ``A x = b`` over Q(q) by fraction-free Gauss-Jordan elimination."""
    n = len(A)
    M = [_row_to_int(list(A[i]) + [b[i]]) for i in range(n)]
    prev = pz.ONE
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k]), None)
        if piv is None:
            raise SingularSystemError("singular Gram system")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        akk = M[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = M[i][k]
            row = M[i]
            for j in range(n + 1):
                if j == k:
                    continue
                v = pz.sub(pz.mul(akk, row[j]), pz.mul(aik, M[k][j]))
                row[j] = pz.divide(v, prev) if prev != pz.ONE else v
            row[k] = ()
        prev = akk
    return [RatFuncQ.from_int_polys(M[i][n], M[i][i]) for i in range(n)]


def _gs(lam, n, gen, sc):
    upper = [mu for mu in partition_list(n) if mu != lam and dominates(mu, lam)]
    base = gen(lam)
    if not upper:
        return base, {lam: ONE}
    gs_ = {mu: gen(mu) for mu in upper}
    A = [[sc(gs_[mu], gs_[nu]) for mu in upper] for nu in upper]
    b = [-sc(base, gs_[nu]) for nu in upper]
    d = solve_linear(A, b)
    out = base
    coeffs = {lam: ONE}
    for mu, c in zip(upper, d):
        if c:
            out = out + gs_[mu].scale(c)
            coeffs[mu] = c
    return out, coeffs


@lru_cache(maxsize=None)
def macdonald_gs(lam, beta: int) -> SymFunc:
    """``Q_lam(q, q^beta)`` as the unique g-unitriangular orthogonal element."""
    lam = tuple(lam)
    return _gs(lam, sum(lam), lambda mu: g(mu, beta), lambda a, b: scalar(a, b, beta))[0]


def norm_closed(lam, beta: int) -> RatFuncQ:
    lam = tuple(lam)
    lc = conjugate(lam)
    r = ONE
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            arm = row - j
            leg = lc[j - 1] - i
            num = pz.sub(pz.ONE, pz.monomial(arm + beta * (leg + 1)))
            den = pz.sub(pz.ONE, pz.monomial(arm + 1 + beta * leg))
            r = r * RatFuncQ.from_int_polys(num, den)
    return r


def schur_jt(lam) -> SymFunc:
    """Jacobi-Trudi determinant ``det(h_{lam_i - i + j})`` with ``h_n = Q_n(q, q)``."""
    lam = tuple(lam)
    l = len(lam)
    if not l:
        return SymFunc.one()
    out = _raw({})
    for perm in permutations(range(l)):
        sign = 1
        for i in range(l):
            for j in range(i + 1, l):
                if perm[i] > perm[j]:
                    sign = -sign
        term = SymFunc.one()
        for i in range(l):
            term = term * qn(lam[i] - i + perm[i], 1)
            if term.is_zero():
                break
        if not term.is_zero():
            out = out + (term if sign > 0 else -term)
    return out


def limit_sym(f: SymFunc) -> SymFunc:
    """Coefficientwise ``q -> 1`` limit (constant RatFuncQ coefficients)."""
    return SymFunc({lam: RatFuncQ(limit_at_one(c)) for lam, c in f.terms.items()})


# -- Jack side (independent oracle over Q) --------------------------------------------

@lru_cache(maxsize=None)
def jack_qn(n: int, beta: int) -> SymFunc:
    if n < 0:
        return _raw({})
    if n == 0:
        return SymFunc.one()
    return _raw({nu: RatFuncQ(Fraction(beta ** len(nu), z_lambda(nu))) for nu in partition_list(n)})


@lru_cache(maxsize=None)
def jack_g(lam, beta: int) -> SymFunc:
    out = SymFunc.one()
    for p in lam:
        out = out * jack_qn(p, beta)
    return out


def jack_scalar(f: SymFunc, h: SymFunc, beta: int) -> RatFuncQ:
    total = ZERO
    for lam, c in f.terms.items():
        d = h.terms.get(lam)
        if d is not None:
            total = total + c * d * RatFuncQ(Fraction(z_lambda(lam), beta ** len(lam)))
    return total


@lru_cache(maxsize=None)
def jack_gs(lam, beta: int) -> SymFunc:
    """Jack ``Q_lam(1/beta)`` by Gram-Schmidt for ``<p_lam, p_mu> = delta z_lam beta^(-l(lam))``."""
    lam = tuple(lam)
    return _gs(lam, sum(lam), lambda mu: jack_g(mu, beta), lambda a, b: jack_scalar(a, b, beta))[0]
