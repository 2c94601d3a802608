"""Closed-form constructions of ``Q_lambda(q, q^beta)``.

Every route returns a :class:`RouteResult` carrying the SymFunc value and the
named scalars that were divided out along the way.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from math import factorial

from .exactq import ONE, RatFuncQ, qpoch_rf
from .laurent import expand_factors, poch
from .partitions import (
    almost_rectangle_params,
    is_rectangle,
    rect_filtration,
)
from .symfunc import (
    SymFunc,
    adjoint_apply,
    g,
    jack_qn,
    lowering_apply,
    macdonald_gs,
    to_g_basis,
)
from .vertexop import eps_q, x_product, x_product_comb

__all__ = [
    "Route",
    "RouteResult",
    "C_rho",
    "rectnorm_closed",
    "lowering_operator",
    "mac_rect_lowering",
    "mac_rect_comb",
    "mac_rect_vertex",
    "mac_gram_schmidt",
    "mac_filtration",
    "jack_hyperdet",
    "comb_prefactor",
    "route_for",
]


class Route(str, Enum):
    gram_schmidt = "gram_schmidt"
    lowering = "lowering"
    combinatorial = "combinatorial"
    vertex = "vertex"
    filtration = "filtration"
    hyperdet_jack = "hyperdet_jack"


@dataclass
class RouteResult:
    shape: tuple
    beta: int
    route: Route
    value: SymFunc
    scalars: dict = field(default_factory=dict)

    def __post_init__(self):
        gr = self.value.grade
        if gr is not None and not self.value.is_zero() and gr != sum(self.shape):
            raise ValueError("route value has the wrong grade")

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "beta": self.beta,
            "route": self.route.value,
            "scalars": {k: v.serialize() for k, v in sorted(self.scalars.items())},
            "value": self.value.to_json(self.beta),
        }

    @classmethod
    def from_json(cls, data) -> "RouteResult":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            tuple(data["shape"]),
            data["beta"],
            Route(data["route"]),
            SymFunc.from_json(data["value"]),
            {k: RatFuncQ.parse(v) for k, v in data["scalars"].items()},
        )


def _qq_step(s: int, beta: int) -> RatFuncQ:
    """``(q; q^beta)_s = prod_{k<s} (1 - q^(1 + k beta))``."""
    return qpoch_rf(1, s, beta)


def C_rho(k: int, s: int, t: int, beta: int) -> RatFuncQ:
    num = RatFuncQ.q_power(s * t * beta) * _qq_step(s, beta) * _qq_step(t, beta) * qpoch_rf(1, (s + t) * beta)
    den = _qq_step(s + t, beta) * qpoch_rf(1, beta) ** (s + t)
    return num / den


def rectnorm_closed(k: int, s: int, t: int, beta: int) -> RatFuncQ:
    """Closed norm ``<Q_rho, Q_rho>`` for ``rho = ((k+1)^t, k^s)``.

    Pochhammer symbols of negative length follow ``(a; p)_{-n} = 1/(a p^{-n}; p)_n``.
    """
    B = beta
    f1 = qpoch_rf(s * B, k) * qpoch_rf(B, s - 1, B) / (qpoch_rf(1, k - 1) * qpoch_rf(k, s, B))
    f2 = qpoch_rf(1 + (s + t) * B, k) * qpoch_rf(1 + (s + 1) * B, t - 1, B) / (
        qpoch_rf(2 + s * B, k - 1) * qpoch_rf(k + 1 + s * B, t, B)
    )
    f3 = qpoch_rf(B, t, B) / qpoch_rf(1, t, B)
    return f1 * f2 * f3


def lowering_operator(lam, beta: int):
    """``prod_{i<j} (D_i/D_j; q)_beta (q D_j/D_i; q)_beta``, pruned to ``D_i`` degree ``<= lam_i``."""
    n = len(lam)
    fac = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            fac += poch({("D", i): 1, ("D", j): -1}, 0, beta)
            fac += poch({("D", j): 1, ("D", i): -1}, 1, beta)
    variables = [("D", i) for i in range(1, n + 1)]
    return expand_factors(variables, fac, bounds={("D", i): (None, lam[i - 1]) for i in range(1, n + 1)})


def _almost(k, s, t):
    return (k + 1,) * t + (k,) * s


def mac_rect_lowering(k: int, s: int, t: int, beta: int) -> RouteResult:
    rho = _almost(k, s, t)
    L = lowering_operator(rho, beta)
    raw = lowering_apply(L, rho, beta)
    C = C_rho(k, s, t, beta)
    return RouteResult(rho, beta, Route.lowering, raw.scale(C.inverse()), {"C_rho": C})


def comb_prefactor(s: int, beta: int) -> RatFuncQ:
    """Scalar in front of the rectangular power-sum formula, as printed."""
    sign = -1 if (beta * s * (s - 1) // 2) % 2 else 1
    e = beta * (beta + 1) * s * (s - 1)
    return RatFuncQ.q_power(e // 4) * sign * qpoch_rf(1, beta) ** s / qpoch_rf(1, s * beta)


def mac_rect_comb(k: int, s: int, beta: int) -> RouteResult:
    """Rectangular ``Q_(k^s)`` from the power-sum enumeration over partition sequences."""
    R = (k,) * s
    st = x_product_comb(R, beta, Fraction(-s, 2))
    raw = st.sector(Fraction(s, 2))
    pref = comb_prefactor(s, beta)
    return RouteResult(R, beta, Route.combinatorial, raw.scale(pref), {"prefactor": pref})


def mac_rect_vertex(k: int, s: int, t: int, beta: int) -> RouteResult:
    rho = _almost(k, s, t)
    n = s + t
    st = x_product(rho, beta)
    raw = st.sector(Fraction(n, 2))
    e = eps_q(beta, n)
    C = C_rho(k, s, t, beta)
    return RouteResult(rho, beta, Route.vertex, raw.scale((e * C).inverse()), {"eps_q": e, "C_rho": C})


def mac_gram_schmidt(lam, beta: int) -> RouteResult:
    lam = tuple(lam)
    return RouteResult(lam, beta, Route.gram_schmidt, macdonald_gs(lam, beta), {})


class NormalizationError(ArithmeticError):
    pass


def mac_filtration(lam, beta: int, rect_route: str = "lowering") -> RouteResult:
    """Iterated adjoints of rectangular functions along the rectangular filtration."""
    lam = tuple(lam)
    rects = rect_filtration(lam)

    def rect(R):
        if rect_route == "gram_schmidt":
            return macdonald_gs(R, beta)
        return mac_rect_lowering(R[0], len(R), 0, beta).value

    if len(rects) == 1:
        return RouteResult(lam, beta, Route.filtration, rect(rects[0]), {"c_lambda": ONE})
    acc = rect(rects[-1])
    for R in reversed(rects[:-1]):
        acc = adjoint_apply(acc, rect(R), beta)
    coeffs = to_g_basis(acc, beta)
    lead = coeffs.get(lam)
    if not lead:
        raise NormalizationError(f"no g_{lam} component in the filtration product")
    c = lead.inverse()
    return RouteResult(lam, beta, Route.filtration, acc.scale(c), {"c_lambda": c})


def jack_hyperdet(k: int, s: int, t: int, beta: int) -> RouteResult:
    """Jack ``Q_rho(1/beta)`` from the signed sum over ``S_{s+t}^{2 beta}``."""
    rho = _almost(k, s, t)
    n = s + t
    perms = list(permutations(range(1, n + 1)))
    signs = [_sign(p) for p in perms]
    # fold the 2*beta permutations one at a time: shift vector -> signed count
    acc = {(0,) * n: 1}
    for j in range(2 * beta):
        plus = j >= beta  # sigma_{beta+j} enters with +, sigma_j with -
        nxt = {}
        for vec, cnt in acc.items():
            for p, sg in zip(perms, signs):
                v = tuple(vec[i] + (p[i] if plus else -p[i]) for i in range(n))
                nxt[v] = nxt.get(v, 0) + cnt * sg
        acc = {v: c for v, c in nxt.items() if c}
    total = SymFunc()
    for vec, cnt in sorted(acc.items()):
        term = SymFunc.one()
        for i in range(n):
            term = term * jack_qn(rho[i] + vec[i], beta)
            if term.is_zero():
                break
        if not term.is_zero():
            total = total + term.scale(cnt)
    x = Fraction(1, beta)
    lhs = _rising(x, s) * _rising(x, t) / _rising(x, n) * Fraction(factorial(n * beta), factorial(beta) ** n)
    return RouteResult(rho, beta, Route.hyperdet_jack, total.scale(RatFuncQ(1 / lhs)), {"scalar": RatFuncQ(lhs)})


def _rising(x, n):
    r = Fraction(1)
    for i in range(n):
        r *= x + i
    return r


def _sign(p) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def route_for(name: str, lam, beta: int, rect_route: str = "lowering") -> RouteResult:
    """Dispatch by CLI route name; raises ``ValueError`` if the shape does not fit."""
    lam = tuple(lam)
    if name == "gs":
        return mac_gram_schmidt(lam, beta)
    if name == "filtration":
        return mac_filtration(lam, beta, rect_route)
    params = almost_rectangle_params(lam)
    if name in ("lowering", "vertex"):
        if params is None:
            raise ValueError(f"route {name} needs an (almost) rectangular shape")
        k, s, t = params
        return mac_rect_lowering(k, s, t, beta) if name == "lowering" else mac_rect_vertex(k, s, t, beta)
    if name == "comb":
        if not is_rectangle(lam):
            raise ValueError("route comb needs a rectangular shape")
        return mac_rect_comb(lam[0], len(lam), beta)
    raise ValueError(f"unknown route {name!r}")
