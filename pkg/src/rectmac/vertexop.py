"""The vertex operator X(z) on V = Lambda (x) Q[Z/2], and its relatives.

A :class:`VState` maps a doubled lattice index ``2m`` (an int) to the
symmetric function component attached to ``e^{m eta}``.  The coefficient
``X_{-n}`` of ``z^n`` is evaluated right to left: the annihilation part
strips sub-multisets off each power sum, the middle term multiplies by
``z^{(2m+1) beta}`` and shifts ``m -> m+1``, and the creation part
multiplies by the one-row function that balances the z-degree.
"""
from __future__ import annotations

from fractions import Fraction

from .exactq import ONE, RatFuncQ
from .laurent import expand_F, expand_factors, geometric_terms
from .partitions import partition_list, submultisets, z_lambda
from .symfunc import (
    SymFunc,
    adjoint_apply,
    eps,
    eps_part,
    g,
    qn,
    scalar,
    tau,
)

__all__ = [
    "VState",
    "eps_q",
    "x_minus",
    "x_product",
    "x_product_comb",
    "xy_pairing",
    "h_op",
    "y_minus",
    "ystar_minus",
    "vacuum",
    "norm_via_y",
]


def _twice(n) -> int:
    v = Fraction(n) * 2
    if v.denominator != 1:
        raise ValueError(f"lattice index must be a half-integer, got {n}")
    return int(v)


class VState:
    """Finite sum ``sum_m f_m (x) e^{m eta}`` keyed by ``2m``."""

    __slots__ = ("sectors",)

    def __init__(self, sectors=None):
        self.sectors = {int(k): v for k, v in (sectors or {}).items() if not v.is_zero()}

    @classmethod
    def single(cls, f: SymFunc, m) -> "VState":
        return cls({_twice(m): f})

    def sector(self, m) -> SymFunc:
        return self.sectors.get(_twice(m), SymFunc())

    def is_zero(self) -> bool:
        return not self.sectors

    def __add__(self, other):
        out = dict(self.sectors)
        for k, v in other.sectors.items():
            out[k] = out[k] + v if k in out else v
        return VState(out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c) -> "VState":
        return VState({k: v.scale(c) for k, v in self.sectors.items()})

    def __eq__(self, other):
        return isinstance(other, VState) and self.sectors == other.sectors

    def to_json(self, beta=None) -> list:
        return [
            f.to_json(beta, lattice=str(Fraction(k, 2))) for k, f in sorted(self.sectors.items())
        ]

    def __repr__(self):
        body = ", ".join(f"e^{Fraction(k, 2)}: {f.to_text()}" for k, f in sorted(self.sectors.items()))
        return f"VState({body})"


def vacuum(m) -> VState:
    return VState.single(SymFunc.one(), m)


def eps_q(beta: int, n: int) -> RatFuncQ:
    """``(-1)^(beta n(n-1)/2) q^(-beta(beta+1) n(n-1)/4)``."""
    sign = -1 if (beta * n * (n - 1) // 2) % 2 else 1
    num = beta * (beta + 1) * n * (n - 1)
    assert num % 4 == 0
    return RatFuncQ.q_power(-num // 4) * sign


# -- building blocks ------------------------------------------------------------

def _annihilate(f: SymFunc, beta: int) -> dict:
    """Apply the annihilation part; return ``{degree_removed: SymFunc}``."""
    pieces = {}
    for lam, c in f.terms.items():
        for mu, rest, binom in submultisets(lam):
            k = c * binom
            if mu:
                k = k * _te(mu, beta)
                if len(mu) % 2:
                    k = -k
            d = sum(mu)
            bucket = pieces.setdefault(d, {})
            prev = bucket.get(rest)
            bucket[rest] = k if prev is None else prev + k
    return {d: SymFunc({k: v for k, v in b.items() if v}) for d, b in pieces.items()}


_TE = {}


def _te(mu, beta):
    """``tau_mu eps_mu = prod q^(-n beta)(1 + q^(n beta))``."""
    key = (mu, beta)
    v = _TE.get(key)
    if v is None:
        v = ONE
        for n in mu:
            v = v * tau(n, beta) * eps(n, beta)
        _TE[key] = v
    return v


def x_minus(n: int, st: VState, beta: int) -> VState:
    """Coefficient of ``z^n`` in ``X(z).st``."""
    out = {}
    for two_m, f in st.sectors.items():
        mid = (two_m + 1) * beta  # z-degree of the middle term
        new = two_m + 2
        acc = out.get(new, SymFunc())
        for d, piece in sorted(_annihilate(f, beta).items()):
            r = n + d - mid
            if r < 0 or piece.is_zero():
                continue
            acc = acc + piece * qn(r, beta)
        if not acc.is_zero():
            out[new] = acc
        else:
            out.pop(new, None)
    return VState(out)


def x_product(lam, beta: int, first: str = "first") -> VState:
    """``X_{-lam}.1 (x) e^{-s eta/2}``.

    ``first="first"`` applies ``X_{-lam_1}`` first (the operator word is
    ``X_{-lam_s} ... X_{-lam_1}``); ``first="last"`` applies ``X_{-lam_s}``
    first.  Only the former equals ``eps_q F(D).g_lam`` for non-constant
    ``lam`` (see the route tests).
    """
    lam = tuple(lam)
    s = len(lam)
    st = VState({-s: SymFunc.one()})
    order = lam if first == "first" else tuple(reversed(lam))
    for part in order:
        st = x_minus(part, st, beta)
    return st


def x_product_comb(lam, beta: int, n) -> VState:
    """``X_{-lam_s} ... X_{-lam_1}.1 (x) e^{n eta}`` by the closed power-sum sum."""
    lam = tuple(lam)
    two_n = _twice(n)
    s = len(lam)
    c = {(): ONE}
    partial = 0
    for i in range(1, s + 1):
        partial += lam[i - 1]
        # |mu^i| = lam_1 + ... + lam_i - i(i + 2n) beta, with 2n = two_n
        size = partial - i * (i + two_n) * beta
        if size < 0:
            return VState()
        # b(kappa) = sum over mu^{i-1} containing kappa of C(m(mu^{i-1}), m(kappa)) c(mu^{i-1})
        b = {}
        for prev, val in c.items():
            for kappa, _, binom in submultisets(prev):
                if sum(kappa) > size:
                    continue
                v = val * binom
                old = b.get(kappa)
                b[kappa] = v if old is None else old + v
        nxt = {}
        for kappa, val in b.items():
            if not val:
                continue
            r = size - sum(kappa)
            for nu in partition_list(r):
                w = val * _tz(nu, beta)
                key = tuple(sorted(kappa + nu, reverse=True))
                old = nxt.get(key)
                nxt[key] = w if old is None else old + w
        c = {k: v for k, v in nxt.items() if v}
    out = {}
    for mu, val in c.items():
        w = val / _te(mu, beta)
        out[mu] = -w if len(mu) % 2 else w
    return VState({two_n + 2 * s: SymFunc(out)})


_TZ = {}


def _tz(nu, beta):
    """``(-1)^l(nu) tau_nu / z_nu``."""
    key = (nu, beta)
    v = _TZ.get(key)
    if v is None:
        v = RatFuncQ(Fraction((-1) ** len(nu), z_lambda(nu)))
        for p in nu:
            v = v * tau(p, beta)
        _TZ[key] = v
    return v


def xy_pairing(lam, mu, beta: int, method: str = "both") -> RatFuncQ:
    """``<X_{-lam}.1 (x) e^{-s eta/2}, g_mu (x) e^{s eta/2}>``.

    ``method`` is ``"scalar"`` (vertex evaluation then scalar product),
    ``"laurent"`` (coefficient of ``z^lam / w^mu`` in ``F_beta[s; t]``) or
    ``"both"``, which computes the two and raises if they differ.
    """
    lam, mu = tuple(lam), tuple(mu)
    s, t = len(lam), len(mu)
    vals = []
    if method in ("scalar", "both"):
        st = x_product(lam, beta)
        vals.append(scalar(st.sector(Fraction(s, 2)), g(mu, beta), beta))
    if method in ("laurent", "both"):
        if sum(lam) != sum(mu):
            vals.append(RatFuncQ(0))
        else:
            bounds = {("z", i + 1): (lam[i], lam[i]) for i in range(s)}
            bounds.update({("w", j + 1): (-mu[j], -mu[j]) for j in range(t)})
            F = expand_F((beta,) * s, t, mu, bounds=bounds)
            key = {("z", i + 1): lam[i] for i in range(s)}
            key.update({("w", j + 1): -mu[j] for j in range(t)})
            vals.append(eps_q(beta, s) * F.coeff(key))
    if not vals:
        raise ValueError(f"unknown method {method!r}")
    if len(vals) == 2 and vals[0] != vals[1]:
        raise ArithmeticError(f"pairing routes disagree for {lam}, {mu}: {vals[0]} vs {vals[1]}")
    return vals[0]


# -- Heisenberg generators and the half operators ----------------------------------

def _deriv(f: SymFunc, n: int) -> SymFunc:
    out = {}
    for lam, c in f.terms.items():
        m = lam.count(n)
        if not m:
            continue
        idx = lam.index(n)
        rest = lam[:idx] + lam[idx + 1:]
        out[rest] = out.get(rest, RatFuncQ(0)) + c * m
    return SymFunc(out)


def h_op(n: int, st: VState, beta: int) -> VState:
    """``h_{-n}`` (n > 0) multiplies by ``p_n``; ``h_n`` is ``n eps_n d/dp_n``."""
    if n == 0:
        raise ValueError("h_0 is not part of the Heisenberg generators used here")
    if n < 0:
        pn = SymFunc.p((-n,))
        return VState({k: f * pn for k, f in st.sectors.items()})
    c = eps(n, beta) * n
    return VState({k: _deriv(f, n).scale(c) for k, f in st.sectors.items()})


def y_minus(n: int, st: VState, beta: int) -> VState:
    """``Y_{-n}``: multiplication by ``Q_n``."""
    return VState({k: f * qn(n, beta) for k, f in st.sectors.items()})


def ystar_minus(n: int, st: VState, beta: int) -> VState:
    """``Y^*_{-n}``: the adjoint of ``Y_{-n}``."""
    return VState({k: adjoint_apply(qn(n, beta), f, beta) for k, f in st.sectors.items()})


def norm_via_y(m: int, beta: int) -> tuple:
    """``(<Q_m, Q_m>, coefficient of (w2/w1)^m in (w2/w1; q)_beta^{-1})``."""
    lhs = scalar(qn(m, beta), qn(m, beta), beta)
    x = {("w", 2): 1, ("w", 1): -1}
    F = expand_factors([("w", 1), ("w", 2)], [geometric_terms(x, b, m) for b in range(beta)])
    return lhs, F.coeff({("w", 2): m, ("w", 1): -m})
