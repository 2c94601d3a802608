"""Acceptance criteria, each timed cold (no disk cache, memo tables cleared).

Run ``pytest tests/test_acceptance.py -v -s`` for one PASS/FAIL line per
criterion, or ``python tests/test_acceptance.py`` for the same lines alone.
"""
import itertools
import sys
import time

import pytest

from rectmac import laurent as lp
from rectmac.cache import clear_memory
from rectmac.macroutes import (
    jack_hyperdet,
    mac_filtration,
    mac_rect_comb,
    mac_rect_lowering,
    mac_rect_vertex,
    rectnorm_closed,
)
from rectmac.partitions import almost_rectangle_params, exact_complement, partitions, rect_filtration
from rectmac.qdyson import (
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
from rectmac.symfunc import jack_gs, limit_sym, macdonald_gs, norm_closed, scalar, schur_jt
from rectmac.verify import cozq_expressions


def _betas(max_s, max_beta, min_s=1):
    for s in range(min_s, max_s + 1):
        yield from itertools.product(range(1, max_beta + 1), repeat=s)


def _shapes(max_weight):
    for n in range(1, max_weight + 1):
        yield from partitions(n)


def crit1():
    cases = sorted(set(_betas(4, 2)) | set(_betas(3, 3)))
    bad = [b for b in cases if ct_brute(b) != ct_product(b)]
    bad += [("w1", b) for b in cases if ct_brute_w1(b) != ct_product(b)]
    bad += [("split", b) for b in cases if ct_via_splitting(b) != ct_product(b)]
    return not bad, f"{len(cases)} beta vectors, failures={bad[:3]}"


def crit2():
    cases = list(_betas(3, 3, min_s=2))
    bad = [b for b in cases if not lp.split_identity_cleared_holds(b)]
    return not bad, f"{len(cases)} beta vectors, failures={bad[:3]}"


def crit3():
    cases = list(_betas(3, 2))
    bad = []
    for b in cases:
        for n in range(1, 4):
            if not kadell_vanishes(b, n):
                bad.append(("vanish", b, n))
            for a in range(1, len(b) + 1):
                if kadell_brute(b, a, n) != kadell_coeff(b, a, n):
                    bad.append(("coeff", b, a, n))
    return not bad, f"{len(cases)} beta vectors x n<=3, failures={bad[:3]}"


def crit4():
    bad, checked = [], 0
    for b in _betas(3, 3):
        for t in (1, 2, 3):
            rep = vanishing_scan(b, t, 4)
            checked += rep.checked_monomials
            if not rep.ok:
                bad.append((b, t, rep.violations[:1]))
    shapes = list(_shapes(4))
    for lam in shapes:
        for beta in (1, 2):
            if cla_brute(lam, beta) != cla(lam, beta):
                bad.append(("cla", lam, beta))
    return not bad, f"{checked} monomials scanned, {2 * len(shapes)} cla cases, failures={bad[:3]}"


def crit5():
    bad, n = [], 0
    for k in range(1, 7):
        for s in range(1, 7):
            if k * s > 6:
                continue
            for beta in (1, 2):
                want = macdonald_gs((k,) * s, beta)
                got = {
                    "lowering": mac_rect_lowering(k, s, 0, beta).value,
                    "comb": mac_rect_comb(k, s, beta).value,
                    "vertex": mac_rect_vertex(k, s, 0, beta).value,
                }
                bad += [((k,) * s, beta, r) for r, v in got.items() if v != want]
                n += 1
    for rho in [(2, 1), (2, 2, 1), (3, 3, 2)]:
        k, s, t = almost_rectangle_params(rho)
        for beta in (1, 2):
            want = macdonald_gs(rho, beta)
            if mac_rect_lowering(k, s, t, beta).value != want:
                bad.append((rho, beta, "lowering"))
            if mac_rect_vertex(k, s, t, beta).value != want:
                bad.append((rho, beta, "vertex"))
            n += 1
    return not bad, f"{n} shape/beta pairs, failures={bad[:3]}"


def crit6():
    bad, n = [], 0
    for lam in _shapes(5):
        for beta in (1, 2):
            Q = macdonald_gs(lam, beta)
            val = scalar(Q, Q, beta)
            if val != norm_closed(lam, beta):
                bad.append((lam, beta))
            p = almost_rectangle_params(lam)
            if p is not None and val != rectnorm_closed(*p, beta):
                bad.append((lam, beta, "rect"))
            n += 1
    return not bad, f"{n} shape/beta pairs, failures={bad[:3]}"


def crit7():
    shapes = list(_shapes(5))
    bad = [lam for lam in shapes if macdonald_gs(lam, 1) != schur_jt(lam)]
    return not bad, f"{len(shapes)} shapes, failures={bad[:3]}"


def crit8():
    cases = [((1, 1), 1), ((2, 2), 1), ((2, 1), 1), ((2, 2, 2), 1), ((2, 1, 1), 1), ((1, 1), 2), ((2, 2), 2)]
    bad = []
    for rho, beta in cases:
        k, s, t = almost_rectangle_params(rho)
        if jack_hyperdet(k, s, t, beta).value != limit_sym(mac_rect_lowering(k, s, t, beta).value):
            bad.append((rho, beta))
    return not bad, f"{len(cases)} cases, failures={bad}"


def crit9():
    bad, scalars = [], []
    for lam in [(2, 1), (3, 1), (2, 2, 1), (3, 2), (3, 3, 1)]:
        for beta in (1, 2):
            r = mac_filtration(lam, beta)
            c = r.scalars["c_lambda"]
            scalars.append(c)
            if not c or r.value != macdonald_gs(lam, beta):
                bad.append((lam, beta))
    return not bad, f"10 cases, all c_lambda nonzero={all(scalars)}, failures={bad}"


def crit10():
    bad = [(m, b) for m in range(7) for b in range(1, 5) if len(set(cozq_expressions(m, b))) != 1]
    bad += [("zw", b) for b in range(1, 5) if not lp.zw_identity_holds(b)]
    bad += [("an", m) for m in range(7) if not lp.an_identity_holds(m)]
    bad += [
        ("interchange", b, k, l)
        for b in range(4)
        for k in range(-2, 3)
        for l in range(-2, 3)
        if not lp.interchange_holds(b, k, l)
    ]
    return not bad, f"failures={bad[:3]}"


def crit11():
    f = rect_filtration((6, 6, 3, 2, 2))
    c = exact_complement((8, 8, 2, 2, 2))
    ok = f == [(6,) * 5, (4,) * 3, (1,)] and c == (6, 6, 6)
    return ok, f"filtration={f}, complement={c}"


CRITERIA = [
    (1, "q-Dyson constant term equals the product formula", crit1, 60),
    (2, "splitting identity after clearing w_1 denominators", crit2, 30),
    (3, "Kadell vanishing and coefficient", crit3, 60),
    (4, "dominance vanishing scans and diagonal coefficient", crit4, 120),
    (5, "route agreement", crit5, 120),
    (6, "norm formula", crit6, 60),
    (7, "Schur degeneration", crit7, 30),
    (8, "Jack hyperdeterminant", crit8, 120),
    (9, "filtration matches Gram-Schmidt", crit9, 120),
    (10, "one-variable coefficient and auxiliary identities", crit10, 10),
    (11, "worked filtration examples", crit11, 1),
]


def evaluate(fn, limit):
    clear_memory()
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    return ok and elapsed < limit, ok, elapsed, detail


@pytest.fixture(autouse=True)
def _cold(monkeypatch):
    monkeypatch.setenv("RECTMAC_CACHE", "off")


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn, limit, capsys):
    passed, exact, elapsed, detail = evaluate(fn, limit)
    with capsys.disabled():
        print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {num:2d}: {title} ({elapsed:.2f}s / {limit}s) {detail}")
    assert exact, detail
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


if __name__ == "__main__":
    import os

    os.environ["RECTMAC_CACHE"] = "off"
    failed = 0
    for num, title, fn, limit in CRITERIA:
        passed, _, elapsed, detail = evaluate(fn, limit)
        failed += not passed
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {num:2d}: {title} ({elapsed:.2f}s / {limit}s) {detail}")
    sys.exit(1 if failed else 0)
