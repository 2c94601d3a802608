"""Command-line entry point: ``rectmac {macdonald,jack,qdyson,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size refusal.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .exactq import RatFuncQ
from .macroutes import jack_hyperdet, mac_rect_lowering, route_for
from .partitions import almost_rectangle_params, parse_partition
from .qdyson import (
    cla,
    cla_brute,
    ct_brute,
    ct_product,
    ct_via_splitting,
    kadell_brute,
    kadell_coeff,
    vanishing_scan,
)
from .symfunc import _render, jack_g, jack_gs, limit_sym, to_g_basis
from .verify import SUITES, Limits, run_suites

log = logging.getLogger("rectmac")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3
DEFAULT_MAX_WEIGHT = 12
DEFAULT_MAX_BETA = 3
DEFAULT_MAX_S = 4


class UsageError(Exception):
    pass


class SizeRefusal(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple:
    try:
        vals = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("expected positive integers")
    return vals


def _shape(text: str) -> tuple:
    try:
        lam = tuple(parse_partition(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if not lam:
        raise argparse.ArgumentTypeError("empty partition")
    return lam


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _caps(p):
    p.add_argument("--max-weight", type=_positive, default=DEFAULT_MAX_WEIGHT)
    p.add_argument("--max-beta", type=_positive, default=DEFAULT_MAX_BETA)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rectmac", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("macdonald", help="Q_lambda(q, q^beta) by a chosen route")
    m.add_argument("--shape", type=_shape, required=True)
    m.add_argument("--beta", type=_positive, default=1)
    m.add_argument("--route", choices=["gs", "lowering", "comb", "vertex", "filtration"], default="gs")
    m.add_argument("--format", choices=["text", "json"], default="text")
    m.add_argument("--value-only", action="store_true", help="JSON: print only the SymFunc")
    _caps(m)

    j = sub.add_parser("jack", help="Jack Q_lambda(1/beta)")
    j.add_argument("--shape", type=_shape, required=True)
    j.add_argument("--beta", type=_positive, default=1)
    j.add_argument("--route", choices=["hyperdet", "gs", "limit"], default="hyperdet")
    j.add_argument("--format", choices=["text", "json"], default="text")
    _caps(j)

    qd = sub.add_parser("qdyson", help="q-Dyson constant terms and coefficients")
    qd.add_argument("mode", choices=["ct", "kadell", "cla", "scan"])
    qd.add_argument("--betas", type=_int_list)
    qd.add_argument("--shape", type=_shape, help="partition for cla")
    qd.add_argument("--beta", type=_positive, help="common beta for cla")
    qd.add_argument("--a", type=int)
    qd.add_argument("--n", type=int)
    qd.add_argument("--t", type=_positive, default=1)
    qd.add_argument("--cap", type=int, default=2)
    qd.add_argument("--method", choices=["formula", "brute", "splitting", "both"], default="formula")
    qd.add_argument("--format", choices=["text", "json"], default=None)
    qd.add_argument("--max-s", type=_positive, default=DEFAULT_MAX_S)
    _caps(qd)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", required=True)
    v.add_argument("--max-weight", type=_positive, default=6)
    v.add_argument("--max-beta", type=_positive, default=2)
    v.add_argument("--max-s", type=_positive, default=3)
    v.add_argument("--workers", type=_positive, default=1)
    v.add_argument("--format", choices=["text", "json"], default="text")
    return ap


def _warn(msg: str):
    print(f"rectmac: warning: {msg}", file=sys.stderr)


def _check_caps(weight: int, beta: int, args):
    if args.max_weight > DEFAULT_MAX_WEIGHT:
        _warn(f"weight cap raised to {args.max_weight}; exact arithmetic may take very long")
    if args.max_beta > DEFAULT_MAX_BETA:
        _warn(f"beta cap raised to {args.max_beta}; exact arithmetic may take very long")
    if weight > args.max_weight:
        raise SizeRefusal(f"weight {weight} exceeds the cap {args.max_weight} (raise with --max-weight)")
    if beta > args.max_beta:
        raise SizeRefusal(f"beta {beta} exceeds the cap {args.max_beta} (raise with --max-beta)")


def _g_text(f, beta) -> str:
    return _render(sorted(to_g_basis(f, beta).items()), "g")


def cmd_macdonald(args) -> int:
    lam = args.shape
    _check_caps(sum(lam), args.beta, args)
    try:
        res = route_for(args.route, lam, args.beta)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        out = res.value.to_json(args.beta) if args.value_only else res.to_json()
        print(json.dumps(out, sort_keys=True))
    else:
        print(_g_text(res.value, args.beta))
        for name, c in sorted(res.scalars.items()):
            print(f"{name} = {c}", file=sys.stderr)
    return EXIT_OK


def cmd_jack(args) -> int:
    lam = args.shape
    _check_caps(sum(lam), args.beta, args)
    if args.route in ("hyperdet", "limit"):
        p = almost_rectangle_params(lam)
        if p is None:
            raise UsageError(f"route {args.route} needs an (almost) rectangular shape")
        k, s, t = p
        if args.route == "hyperdet":
            value = jack_hyperdet(k, s, t, args.beta).value
        else:
            value = limit_sym(mac_rect_lowering(k, s, t, args.beta).value)
    else:
        value = jack_gs(lam, args.beta)
    if args.format == "json":
        print(json.dumps(value.to_json(args.beta, family="jack", shape=list(lam)), sort_keys=True))
    else:
        coeffs = to_g_basis(value, args.beta, gen=lambda mu: jack_g(mu, args.beta))
        print(_render(sorted(coeffs.items()), "g"))
    return EXIT_OK


def _pick(method, formula, brute, splitting=None):
    if method == "formula":
        return formula()
    if method == "brute":
        return brute()
    if method == "splitting":
        if splitting is None:
            raise UsageError("--method splitting only applies to ct")
        return splitting()
    a, b = formula(), brute()
    if a != b:
        raise ArithmeticError(f"formula {a} differs from brute force {b}")
    return a


def cmd_qdyson(args) -> int:
    mode = args.mode
    if mode == "cla":
        if args.shape is None or args.beta is None:
            raise UsageError("cla needs --shape and --beta")
        lam, beta = args.shape, args.beta
        _check_caps(sum(lam), beta, args)
        value = _pick(args.method, lambda: cla(lam, beta), lambda: cla_brute(lam, beta))
        return _print_rf(value, args, {"shape": list(lam), "beta": beta, "mode": mode})
    if args.betas is None:
        raise UsageError(f"{mode} needs --betas")
    betas = args.betas
    if len(betas) > args.max_s:
        raise SizeRefusal(f"s = {len(betas)} exceeds the cap {args.max_s} (raise with --max-s)")
    _check_caps(sum(betas), max(betas), args)
    meta = {"betas": list(betas), "mode": mode}
    if mode == "ct":
        value = _pick(args.method, lambda: ct_product(betas), lambda: ct_brute(betas), lambda: ct_via_splitting(betas))
        return _print_rf(value, args, meta)
    if mode == "kadell":
        a, n = args.a, args.n
        if a is None or n is None or not 1 <= a <= len(betas) or n < 1:
            raise UsageError("kadell needs 1 <= --a <= s and --n >= 1")
        value = _pick(args.method, lambda: kadell_coeff(betas, a, n), lambda: kadell_brute(betas, a, n))
        return _print_rf(value, args, dict(meta, a=a, n=n))
    # scan
    if args.cap < 0:
        raise UsageError("--cap must be non-negative")
    rep = vanishing_scan(betas, args.t, args.cap)
    if args.format == "text":
        print(f"checked {rep.checked_monomials} monomials, {len(rep.violations)} violations")
        for mono, got, want in rep.violations:
            print(f"  {mono}: got {got}, expected {want}")
    else:
        print(rep.dumps())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _print_rf(value: RatFuncQ, args, meta) -> int:
    if args.format == "json":
        print(json.dumps(dict(meta, value=value.serialize()), sort_keys=True))
    else:
        print(value)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "all":
        suites = SUITES
    elif args.suite in SUITES:
        suites = (args.suite,)
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    lim = Limits(args.max_weight, args.max_beta, args.max_s)
    t0 = time.perf_counter()
    results = run_suites(suites, lim, args.workers)
    failures = [r for r in results if not r[1]]
    if args.format == "json":
        report = {
            "suites": list(suites),
            "limits": vars(lim),
            "cases": len(results),
            "failures": [{"case": repr(c), "detail": d} for c, _, d, _ in failures],
            "ok": not failures,
        }
        print(json.dumps(report, sort_keys=True))
    else:
        for name in suites:
            mine = [r for r in results if r[0][0] == name]
            bad = sum(1 for r in mine if not r[1])
            print(f"{name:<11} {len(mine) - bad}/{len(mine)} passed")
        for c, _, d, _ in failures:
            print(f"FAIL {c!r} {d}")
    log.info("verify finished in %.2fs", time.perf_counter() - t0)
    return EXIT_FAIL if failures else EXIT_OK


COMMANDS = {"macdonald": cmd_macdonald, "jack": cmd_jack, "qdyson": cmd_qdyson, "verify": cmd_verify}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="rectmac: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.getLogger().setLevel(logging.INFO)
        if getattr(args, "format", "x") is None:
            args.format = "json" if args.mode == "scan" else "text"
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rectmac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeRefusal as exc:
        print(f"rectmac: refused: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ArithmeticError as exc:
        print(f"rectmac: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
