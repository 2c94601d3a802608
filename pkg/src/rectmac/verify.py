"""Invariant suites shared by the ``verify`` command and the acceptance tests.

A suite expands into independent cases ``(suite, key)``; :func:`run_case`
evaluates one of them and returns ``(ok, detail)``.  Cases are plain tuples
so they can be shipped to worker processes.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from . import laurent as lp
from .exactq import _second_expression, complete_homogeneous_geometric, qpoch_rf
from .macroutes import (
    mac_filtration,
    mac_rect_comb,
    mac_rect_lowering,
    mac_rect_vertex,
    jack_hyperdet,
    rectnorm_closed,
)
from .partitions import almost_rectangle_params, corner_number, partitions
from .qdyson import (
    cla,
    cla_brute,
    ct_brute,
    ct_brute_w1,
    ct_product,
    ct_via_splitting,
    kadell_brute,
    kadell_coeff,
    kadell_vanishes,
    vanishing_scan,
)
from .symfunc import jack_gs, limit_sym, macdonald_gs, norm_closed, scalar, schur_jt

SUITES = ("identities", "splitting", "ctproduct", "kadell", "fcla", "routes", "norms", "jack", "filtration")


@dataclass(frozen=True)
class Limits:
    max_weight: int = 6
    max_beta: int = 2
    max_s: int = 3


def _betas(max_s, max_beta):
    for s in range(1, max_s + 1):
        yield from product(range(1, max_beta + 1), repeat=s)


def _shapes(max_weight):
    for n in range(1, max_weight + 1):
        yield from partitions(n)


def cases(suite: str, lim: Limits) -> list:
    W, B, S = lim.max_weight, lim.max_beta, lim.max_s
    out = []
    if suite == "identities":
        out += [("cozq", m, b) for m in range(W + 1) for b in range(B + 3)]
        out += [("zw", b) for b in range(1, B + 1)]
        out += [("an", m) for m in range(1, W + 1)]
        out += [("interchange", b, k, l) for b in range(1, B + 1) for k in range(3) for l in range(3)]
        out += [("cancel", x, y, b) for x in range(1, B + 1) for y in range(1, B + 1) for b in range(x)]
    elif suite == "splitting":
        out += [tuple(bs) for bs in _betas(S, B) if len(bs) >= 2]
    elif suite == "ctproduct":
        out += [tuple(bs) for bs in _betas(S, B)]
    elif suite == "kadell":
        out += [(bs, a, n) for bs in _betas(S, B) for a in range(1, len(bs) + 1) for n in range(1, 4)]
    elif suite == "fcla":
        out += [("cla", lam, b) for lam in _shapes(min(W, 4)) for b in range(1, B + 1)]
        out += [("scan", bs, t) for bs in _betas(S, B) for t in (1, 2)]
    elif suite == "routes":
        for lam in _shapes(W):
            p = almost_rectangle_params(lam)
            if p is not None:
                out += [(lam, b) for b in range(1, B + 1)]
    elif suite == "norms":
        out += [(lam, b) for lam in _shapes(min(W, 5)) for b in range(1, B + 1)]
    elif suite == "jack":
        for lam in _shapes(W):
            p = almost_rectangle_params(lam)
            if p is None:
                continue
            n = p[1] + p[2]
            # the hyperdeterminant sums over (n!)^(2 beta) tuples
            out += [(lam, b) for b in range(1, B + 1) if n <= 3 and (n <= 2 or b == 1)]
    elif suite == "filtration":
        out += [(lam, b) for lam in _shapes(min(W, 7)) for b in range(1, B + 1) if corner_number(lam) >= 2]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return [(suite, c) for c in out]


def cozq_expressions(m: int, beta: int) -> tuple:
    """The three expressions for the coefficient of ``z^m`` in ``1/(z; q)_beta``."""
    prod = qpoch_rf(beta, m) / qpoch_rf(1, m)
    hom = complete_homogeneous_geometric(m, beta)
    pf = _second_expression(m, beta) if (m, beta) != (0, 0) else prod
    return prod, hom, pf


def _routes(lam, b):
    k, s, t = almost_rectangle_params(lam)
    gs = macdonald_gs(lam, b)
    got = {"lowering": mac_rect_lowering(k, s, t, b).value, "vertex": mac_rect_vertex(k, s, t, b).value}
    if t == 0:
        got["comb"] = mac_rect_comb(k, s, b).value
    bad = [name for name, v in got.items() if v != gs]
    if t:
        # the almost-rectangular norm formula comes for free here
        if scalar(gs, gs, b) != rectnorm_closed(k, s, t, b):
            bad.append("rectnorm")
    return not bad, ",".join(bad)


def run_case(case) -> tuple:
    suite, c = case
    if suite == "identities":
        kind = c[0]
        if kind == "cozq":
            a, b_, d = cozq_expressions(c[1], c[2])
            return a == b_ == d, ""
        if kind == "zw":
            return lp.zw_identity_holds(c[1]), ""
        if kind == "an":
            return lp.an_identity_holds(c[1]), ""
        if kind == "interchange":
            return lp.interchange_holds(*c[1:]), ""
        if kind == "cancel":
            return lp.cancel1_holds(*c[1:]) and lp.cancel2_holds(*c[1:]), ""
    if suite == "splitting":
        return lp.split_identity_cleared_holds(c) and lp.split_identity_holds(c, 2), ""
    if suite == "ctproduct":
        want = ct_product(c)
        bad = [n for n, f in (("brute", ct_brute), ("w1", ct_brute_w1), ("split", ct_via_splitting)) if f(c) != want]
        return not bad, ",".join(bad)
    if suite == "kadell":
        bs, a, n = c
        if kadell_brute(bs, a, n) != kadell_coeff(bs, a, n):
            return False, "coefficient"
        return kadell_vanishes(bs, n), "vanishing"
    if suite == "fcla":
        if c[0] == "cla":
            return cla_brute(c[1], c[2]) == cla(c[1], c[2]), ""
        rep = vanishing_scan(c[1], c[2], 4)
        return rep.ok, f"{len(rep.violations)} violations"
    if suite == "routes":
        return _routes(*c)
    if suite == "norms":
        lam, b = c
        Q = macdonald_gs(lam, b)
        ok = scalar(Q, Q, b) == norm_closed(lam, b)
        if b == 1:
            ok = ok and Q == schur_jt(lam)
        return ok, ""
    if suite == "jack":
        lam, b = c
        k, s, t = almost_rectangle_params(lam)
        hd = jack_hyperdet(k, s, t, b).value
        lo = limit_sym(mac_rect_lowering(k, s, t, b).value)
        return hd == lo == jack_gs(lam, b), ""
    if suite == "filtration":
        lam, b = c
        r = mac_filtration(lam, b)
        c_lam = r.scalars["c_lambda"]
        return bool(c_lam) and r.value == macdonald_gs(lam, b), f"c_lambda={c_lam}"
    raise ValueError(f"unknown suite {suite!r}")


def _timed(case):
    t0 = time.perf_counter()
    try:
        ok, detail = run_case(case)
    except ArithmeticError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return case, ok, detail, time.perf_counter() - t0


def run_suites(suites, lim: Limits, workers: int = 1) -> list:
    """Run every case; results are sorted by case key regardless of ``workers``."""
    todo = [cs for name in suites for cs in cases(name, lim)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_timed, todo))
    else:
        results = [_timed(cs) for cs in todo]
    return sorted(results, key=lambda r: repr(r[0]))
