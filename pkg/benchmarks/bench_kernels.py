"""Compare the numba and numpy kernels on q-Dyson expansions.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends must return identical arrays; the script exits non-zero if not.
"""
import argparse
import sys
import time

import numpy as np

from rectmac.kernels import HAVE_NUMBA, Factor, expand_product
from rectmac.laurent import dyson_factors

CASES = [
    ((2, 2, 2), 0, None),
    ((1, 1, 1, 1), 0, None),
    ((2, 2, 2, 2), 0, None),
    ((3, 3, 3), 0, None),
    ((2, 2, 1), 2, (4, 4)),
    ((3, 2, 2), 1, (6,)),
]


def build(betas, t, wcaps):
    s = len(betas)
    variables = [("z", i) for i in range(1, s + 1)] + [("w", j) for j in range(1, t + 1)]
    index = {v: i for i, v in enumerate(variables)}
    terms = dyson_factors(betas, t, wcaps)
    facs = [Factor.from_terms(len(variables), [({index[v]: e for v, e in d.items()}, c, k) for d, c, k in f]) for f in terms]
    return facs, len(variables)


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy kernel is available")
        return 1
    # compile once outside the timings
    facs, nv = build((1, 1), 0, None)
    expand_product(facs, nv, backend_name="numba")

    print(f"{'case':<24}{'terms':>8}{'numpy ms':>11}{'numba ms':>11}{'speedup':>9}")
    ok = True
    for betas, t, wcaps in CASES:
        facs, nv = build(betas, t, wcaps)
        tn, a = best_of(lambda: expand_product(facs, nv, backend_name="numpy"), args.repeat)
        tb, b = best_of(lambda: expand_product(facs, nv, backend_name="numba"), args.repeat)
        same = a[2] == b[2] and np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        ok &= same
        label = f"{betas} t={t}"
        print(f"{label:<24}{a[0].shape[0]:>8}{tn * 1e3:>11.1f}{tb * 1e3:>11.1f}{tn / tb:>8.1f}x" + ("" if same else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
