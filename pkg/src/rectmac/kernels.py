"""Sparse product expansion of Laurent polynomials with Z[q] coefficients.

A polynomial is a pair ``(exps, coef)``: ``exps`` is an ``(N, V)`` int64 array
of exponent vectors and ``coef`` an ``(N, D)`` array whose row ``i`` holds the
coefficients of ``q^0 .. q^(D-1)``.  Factors are short sums of terms
``c * q^s * x^delta`` and the expansion multiplies them in order, merging
equal monomials and pruning monomials that can no longer satisfy the
caller's linear constraints.

The hot step runs under numba when available.  Set ``RECTMAC_KERNEL=numpy``
to force the pure numpy path (also used automatically when int64 could
overflow, in which case coefficients switch to Python ints).
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_INT64_SAFE = 1 << 62


def backend() -> str:
    """The active kernel backend, ``"numba"`` or ``"numpy"``."""
    if HAVE_NUMBA and os.environ.get("RECTMAC_KERNEL", "numba").lower() != "numpy":
        return "numba"
    return "numpy"


@dataclass(frozen=True)
class Factor:
    deltas: np.ndarray  # (M, V) int64
    coeffs: np.ndarray  # (M,) int64
    qshift: np.ndarray  # (M,) int64, non-negative
    qbase: int = 0  # common q-power pulled out of every term

    @classmethod
    def from_terms(cls, nvars: int, terms) -> "Factor":
        """``terms`` is an iterable of ``(delta_dict, coeff, qshift)``."""
        terms = list(terms)
        deltas = np.zeros((len(terms), nvars), dtype=np.int64)
        for r, (delta, _, _) in enumerate(terms):
            for v, e in delta.items():
                deltas[r, v] += e
        coeffs = np.array([c for _, c, _ in terms], dtype=np.int64)
        qshift = np.array([s for _, _, s in terms], dtype=np.int64)
        base = int(qshift.min())
        return cls(deltas, coeffs, qshift - base, base)


@dataclass(frozen=True)
class Constraint:
    """Keep a monomial only if ``lo <= weights . exps <= hi`` at the end."""

    weights: np.ndarray
    lo: int
    hi: int


# -- numba kernels ----------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _step_numba(keys, coef, dkey, cf, qsh):
        n, d = coef.shape
        m = dkey.shape[0]
        cand = np.empty(n * m, dtype=np.int64)
        for p in range(n):
            for f in range(m):
                cand[p * m + f] = keys[p] + dkey[f]
        uniq = np.unique(cand)
        idx = np.searchsorted(uniq, cand)
        dn = d + qsh.max()
        out = np.zeros((uniq.shape[0], dn), dtype=np.int64)
        for p in range(n):
            for f in range(m):
                r = idx[p * m + f]
                c = cf[f]
                s = qsh[f]
                for j in range(d):
                    out[r, s + j] += c * coef[p, j]
        return uniq, out

    @njit(cache=True)
    def _keep_numba(keys, coef, offsets, strides, wts, lo, hi):
        n, d = coef.shape
        v = strides.shape[0]
        nc = wts.shape[0]
        keep = np.zeros(n, dtype=np.bool_)
        e = np.empty(v, dtype=np.int64)
        for i in range(n):
            nz = False
            for j in range(d):
                if coef[i, j] != 0:
                    nz = True
                    break
            if not nz:
                continue
            k = keys[i]
            for t in range(v):
                e[t] = k // strides[t] - offsets[t]
                k = k % strides[t]
            ok = True
            for c in range(nc):
                acc = 0
                for t in range(v):
                    acc += wts[c, t] * e[t]
                if acc < lo[c] or acc > hi[c]:
                    ok = False
                    break
            keep[i] = ok
        return keep


def _step_numpy(keys, coef, dkey, cf, qsh):
    n, d = coef.shape
    m = dkey.shape[0]
    cand = (keys[:, None] + dkey[None, :]).ravel()
    uniq, inv = np.unique(cand, return_inverse=True)
    inv = inv.reshape(n, m)
    out = np.zeros((uniq.shape[0], d + int(qsh.max())), dtype=coef.dtype)
    for f in range(m):
        s = int(qsh[f])
        # rows are distinct for a fixed factor term
        out[inv[:, f], s:s + d] += coef * int(cf[f])
    return uniq, out


def _keep_numpy(keys, coef, offsets, strides, wts, lo, hi):
    nz = (coef != 0).any(axis=1)
    e = np.empty((keys.shape[0], strides.shape[0]), dtype=np.int64)
    k = keys.copy()
    for t in range(strides.shape[0]):
        e[:, t] = k // strides[t] - offsets[t]
        k = k % strides[t]
    if wts.shape[0]:
        vals = e @ wts.T
        ok = ((vals >= lo[None, :]) & (vals <= hi[None, :])).all(axis=1)
    else:
        ok = np.ones(keys.shape[0], dtype=bool)
    return nz & ok


def _max_abs(coef) -> int:
    if coef.size == 0:
        return 0
    if coef.dtype == object:
        return max(abs(int(x)) for x in coef.ravel())
    return int(np.abs(coef).max())


def expand_product(factors, nvars: int, constraints=(), backend_name: str | None = None):
    """Multiply ``factors`` and return ``(exps, coef, qoff)``.

    Row ``i`` of the product is ``q**qoff * sum_j coef[i, j] q**j * x**exps[i]``.
    """
    factors = list(factors)
    constraints = list(constraints)
    use = backend_name or backend()
    nf = len(factors)

    lo_tot = np.zeros(nvars, dtype=np.int64)
    hi_tot = np.zeros(nvars, dtype=np.int64)
    for fac in factors:
        lo_tot += np.minimum(fac.deltas.min(axis=0), 0)
        hi_tot += np.maximum(fac.deltas.max(axis=0), 0)
    widths = hi_tot - lo_tot + 1
    strides = np.ones(nvars, dtype=np.int64)
    for t in range(nvars - 2, -1, -1):
        strides[t] = strides[t + 1] * widths[t + 1]
    if nvars and float(strides[0]) * float(widths[0]) >= 2.0**62:
        raise OverflowError("exponent ranges too wide for int64 monomial keys")
    offsets = -lo_tot

    wts = np.array([c.weights for c in constraints], dtype=np.int64).reshape(len(constraints), nvars)
    lo = np.array([c.lo for c in constraints], dtype=np.int64)
    hi = np.array([c.hi for c in constraints], dtype=np.int64)
    # reachable slack of the factors still to come, per constraint
    fmin = np.zeros((nf, len(constraints)), dtype=np.int64)
    fmax = np.zeros((nf, len(constraints)), dtype=np.int64)
    for i, fac in enumerate(factors):
        if len(constraints):
            proj = fac.deltas @ wts.T
            fmin[i] = proj.min(axis=0)
            fmax[i] = proj.max(axis=0)
    rem_min = np.zeros((nf + 1, len(constraints)), dtype=np.int64)
    rem_max = np.zeros((nf + 1, len(constraints)), dtype=np.int64)
    for i in range(nf - 1, -1, -1):
        rem_min[i] = rem_min[i + 1] + fmin[i]
        rem_max[i] = rem_max[i + 1] + fmax[i]

    keys = np.array([int(offsets @ strides)], dtype=np.int64)
    coef = np.ones((1, 1), dtype=np.int64)
    for i, fac in enumerate(factors):
        dkey = fac.deltas @ strides
        bound = _max_abs(coef) * int(np.abs(fac.coeffs).max()) * len(fac.coeffs)
        if coef.dtype != object and bound >= _INT64_SAFE:
            coef = coef.astype(object)
        if use == "numba" and coef.dtype != object:
            keys, coef = _step_numba(keys, coef, dkey, fac.coeffs, fac.qshift)
        else:
            keys, coef = _step_numpy(keys, coef, dkey, fac.coeffs, fac.qshift)
        clo = lo - rem_max[i + 1]
        chi = hi - rem_min[i + 1]
        if use == "numba" and coef.dtype != object:
            keep = _keep_numba(keys, coef, offsets, strides, wts, clo, chi)
        else:
            keep = _keep_numpy(keys, coef, offsets, strides, wts, clo, chi)
        keys, coef = keys[keep], coef[keep]
        if coef.shape[0]:
            nzcols = np.nonzero((coef != 0).any(axis=0))[0]
            coef = coef[:, : nzcols[-1] + 1]
        else:
            coef = coef[:, :1]
    exps = np.empty((keys.shape[0], nvars), dtype=np.int64)
    k = keys.copy()
    for t in range(nvars):
        exps[:, t] = k // strides[t] - offsets[t]
        k = k % strides[t]
    return exps, coef, sum(f.qbase for f in factors)
