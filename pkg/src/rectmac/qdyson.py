"""q-Dyson constant terms: closed forms next to brute-force extraction."""
from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from .cache import cached
from .exactq import ONE, ZERO, RatFuncQ, inv_poch_coeff, qpoch_rf
from .laurent import B_poly, B_prefactor, LaurentPoly, expand_F
from .partitions import gen_dominance_geq, sort_desc

__all__ = [
    "CTReport",
    "ct_product",
    "ct_brute",
    "ct_brute_w1",
    "ct_via_splitting",
    "kadell_coeff",
    "kadell_brute",
    "kadell_vanishes",
    "cla",
    "cla_brute",
    "vanishing_scan",
    "scan_laurent",
    "expand_F_cached",
]


def _qq(n: int) -> RatFuncQ:
    return qpoch_rf(1, n)


def ct_product(betas) -> RatFuncQ:
    betas = tuple(betas)
    r = _qq(sum(betas))
    for b in betas:
        r = r / _qq(b)
    return r


def expand_F_cached(betas, t=0, wcaps=None, total_wcap=None) -> LaurentPoly:
    params = {"betas": list(betas), "t": t, "wcaps": list(wcaps or ()), "total_wcap": total_wcap}
    return cached(
        "expand_F",
        params,
        lambda: expand_F(betas, t, wcaps, total_wcap=total_wcap),
        lambda p: p.to_json(),
        LaurentPoly.from_json,
    )


def ct_brute(betas) -> RatFuncQ:
    return expand_F_cached(tuple(betas), 0).ct()


def ct_brute_w1(betas, cap: int = 2) -> RatFuncQ:
    """Constant term of the truncated ``F_beta[s; 1]``."""
    return expand_F_cached(tuple(betas), 1, (cap,)).ct()


def ct_via_splitting(betas) -> RatFuncQ:
    """Constant term by the recursion over the split terms.

    Each inner sum over ``b`` is also checked against its closed form
    ``q^(beta_{a+1}+...) (q^beta_a; q)_M / (q; q)_M`` with ``M = |beta| - beta_a``.
    """
    betas = tuple(betas)
    s = len(betas)
    if s == 1:
        return ONE
    total = ZERO
    full = sum(betas)
    for a in range(1, s + 1):
        rest = betas[: a - 1] + betas[a:]
        Ca = ct_via_splitting(rest)
        inner = ZERO
        for b in range(betas[a - 1]):
            ctB = B_poly(betas, a, b).ct()
            if ctB != B_prefactor(betas, a, b):
                raise ArithmeticError(f"B_{a},{b} constant term mismatch")
            inner = inner + ctB
        M = full - betas[a - 1]
        closed = RatFuncQ.q_power(sum(betas[a:])) * inv_poch_coeff(M, betas[a - 1], check=False)
        if inner != closed:
            raise ArithmeticError(f"telescoping step failed at a={a}")
        total = total + Ca * inner
    return total


def kadell_coeff(betas, a: int, n: int) -> RatFuncQ:
    betas = tuple(betas)
    if not 1 <= a <= len(betas) or n < 1:
        raise ValueError("need 1 <= a <= s and n >= 1")
    full = sum(betas)
    ba = betas[a - 1]
    r = RatFuncQ.q_power(sum(betas[a:])) * (ONE - RatFuncQ.q_power(ba)) * _qq(full - ba)
    for b in betas:
        r = r / _qq(b)
    return r * qpoch_rf(full - ba + n + 1, ba - 1)


def kadell_brute(betas, a: int, n: int) -> RatFuncQ:
    betas = tuple(betas)
    s = len(betas)
    bounds = {("z", i): ((n, n) if i == a else (0, 0)) for i in range(1, s + 1)}
    bounds[("w", 1)] = (-n, -n)
    F = expand_F(betas, 1, (n,), bounds=bounds)
    return F.coeff({("z", a): n, ("w", 1): -n})


def kadell_vanishes(betas, n: int) -> bool:
    """No ``z^k / w_1^n`` with every ``k_i < n`` survives in ``F_beta[s; 1]``."""
    betas = tuple(betas)
    s = len(betas)
    bounds = {("z", i): (None, n - 1) for i in range(1, s + 1)}
    bounds[("w", 1)] = (-n, -n)
    return expand_F(betas, 1, (n,), bounds=bounds).is_zero()


def cla(lam, beta: int) -> RatFuncQ:
    lam = tuple(lam)
    s = len(lam)
    mult = Counter(lam)
    e = beta * (s * s - sum(m * m for m in mult.values()))
    assert e % 2 == 0
    r = RatFuncQ.q_power(e // 2)
    one_minus = ONE - RatFuncQ.q_power(beta)
    for m in mult.values():
        r = r * qpoch_rf(beta, m, beta) / one_minus**m
    for i, part in enumerate(lam, start=1):
        L = part + (s - i) * beta
        r = r * qpoch_rf(beta, L) / _qq(L)
    return r


def cla_brute(lam, beta: int) -> RatFuncQ:
    lam = tuple(lam)
    s = len(lam)
    bounds = {("z", i + 1): (lam[i], lam[i]) for i in range(s)}
    bounds.update({("w", j + 1): (-lam[j], -lam[j]) for j in range(s)})
    F = expand_F((beta,) * s, s, lam, bounds=bounds)
    key = {("z", i + 1): lam[i] for i in range(s)}
    key.update({("w", j + 1): -lam[j] for j in range(s)})
    return F.coeff(key)


@dataclass
class CTReport:
    betas: list
    s: int
    t: int
    cap: int
    checked_monomials: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def scan_laurent(F: LaurentPoly, betas, t: int, cap: int) -> CTReport:
    """Check every monomial of ``F`` against the dominance vanishing rules."""
    betas = tuple(betas)
    s = len(betas)
    rep = CTReport(list(betas), s, t, cap)
    for mono, c in F.sorted_terms():
        exps = dict(mono)
        k = [exps.get(("z", i), 0) for i in range(1, s + 1)]
        m = [-exps.get(("w", j), 0) for j in range(1, t + 1)]
        if sum(m) > cap:
            continue
        rep.checked_monomials += 1
        bad = not gen_dominance_geq(sort_desc(k), sort_desc(m))
        if t == 1 and m[0] >= 1 and all(x < m[0] for x in k):
            bad = True
        if bad:
            text = " ".join(f"{v[0]}{v[1]}^{e}" for v, e in mono) or "1"
            rep.violations.append([text, str(c), "0"])
    return rep


def vanishing_scan(betas, t: int, cap: int) -> CTReport:
    """Scan every ``z^k / w^m`` with ``|m| <= cap`` for dominance violations."""
    t0 = time.perf_counter()
    F = expand_F_cached(tuple(betas), t, (cap,) * t, total_wcap=cap)
    rep = scan_laurent(F, betas, t, cap)
    rep.elapsed = round(time.perf_counter() - t0, 6)
    return rep
