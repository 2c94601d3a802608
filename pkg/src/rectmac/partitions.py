"""Partition combinatorics.

Partitions are plain tuples of positive parts in weakly decreasing order;
``()`` is the zero partition.  :class:`Partition` is a validated tuple
subclass for user-facing input, and compares/hashes like the bare tuple, so
both can be used as dictionary keys interchangeably.
"""
from __future__ import annotations

import re
from collections import Counter
from enum import Enum
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod

__all__ = [
    "Partition",
    "Dominance",
    "parse_partition",
    "format_partition",
    "partitions",
    "weight",
    "length",
    "conjugate",
    "multiplicities",
    "z_lambda",
    "dominance_cmp",
    "dominates",
    "gen_dominance_geq",
    "sort_desc",
    "is_rectangle",
    "almost_rectangle_params",
    "complement",
    "exact_complement",
    "corner_number",
    "block_form",
    "rect_filtration",
    "rect_filtration_closed",
    "is_submultiset",
    "multiset_diff",
    "multiset_union",
    "mult_binomial",
    "submultisets",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return Partition(conjugate(self))

    def __repr__(self):
        return f"Partition({format_partition(self)!r})"


class Dominance(Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


_FREQ = re.compile(r"(\d+)\^(\d+)")


def parse_partition(text: str) -> Partition:
    """Parse ``"6,6,3,2,2"`` or the frequency notation ``"(4^3)"``/``"(4^2 3^1)"``."""
    s = text.strip()
    if s in ("", "0", "(0)", "()"):
        return Partition(())
    if "^" in s:
        body = s.strip("()")
        parts = []
        for tok in re.split(r"[\s,]+", body):
            if not tok:
                continue
            m = _FREQ.fullmatch(tok)
            if m:
                parts.extend([int(m.group(1))] * int(m.group(2)))
            else:
                parts.append(int(tok))
        return Partition(sorted(parts, reverse=True))
    body = s.strip("()[]")
    return Partition(int(x) for x in body.split(",") if x.strip())


def format_partition(lam) -> str:
    return ",".join(str(p) for p in lam) if lam else "0"


def partitions(n: int, max_len: int | None = None, max_part: int | None = None):
    """Yield partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    lim = n if max_len is None else max_len
    yield from _parts(n, top, lim)


def _parts(n, top, lim):
    if n == 0:
        yield ()
        return
    if lim == 0:
        return
    for first in range(min(n, top), 0, -1):
        if first * lim < n:
            break
        for rest in _parts(n - first, first, lim - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partition_list(n: int) -> tuple:
    return tuple(partitions(n))


def weight(lam) -> int:
    return sum(lam)


def length(lam) -> int:
    return len(lam)


def conjugate(lam) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def multiplicities(lam) -> dict:
    return dict(Counter(lam))


@lru_cache(maxsize=None)
def z_lambda(lam) -> int:
    return prod(i**m * factorial(m) for i, m in Counter(lam).items())


def _partial_sums_cmp(a, b):
    n = max(len(a), len(b))
    ge = le = True
    sa = sb = 0
    for i in range(n):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            ge = False
        elif sa > sb:
            le = False
    return ge, le


def dominance_cmp(lam, mu) -> Dominance:
    if sum(lam) != sum(mu):
        raise ValueError("dominance order compares partitions of equal weight only")
    ge, le = _partial_sums_cmp(lam, mu)
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def dominates(lam, mu) -> bool:
    """``lam >= mu`` in dominance order (equal weights assumed)."""
    return _partial_sums_cmp(lam, mu)[0]


def gen_dominance_geq(a, b) -> bool:
    """Generalized dominance on integer vectors (zero padded partial sums)."""
    return _partial_sums_cmp(tuple(a), tuple(b))[0]


def sort_desc(a) -> tuple:
    """``a^+``: the entries of ``a`` rearranged in weakly decreasing order."""
    return tuple(sorted(a, reverse=True))


def is_rectangle(lam) -> bool:
    return bool(lam) and lam[0] == lam[-1]


def almost_rectangle_params(lam):
    """Return ``(k, s, t)`` with ``lam == ((k+1)^t, k^s)``, ``s >= 1``; else ``None``."""
    if not lam:
        return None
    k = lam[-1]
    if lam[0] == k:
        return (k, len(lam), 0)
    if lam[0] != k + 1:
        return None
    t = sum(1 for p in lam if p == k + 1)
    s = len(lam) - t
    return (k, s, t)


def complement(k: int, s: int, lam) -> tuple:
    """``R -' lam`` for the rectangle ``R = (k^s)``."""
    if lam and (lam[0] > k or len(lam) > s):
        raise ValueError(f"{format_partition(lam)} does not fit in ({k}^{s})")
    padded = tuple(lam) + (0,) * (s - len(lam))
    out = tuple(k - padded[s - 1 - i] for i in range(s))
    while out and out[-1] == 0:
        out = out[:-1]
    return out


def exact_complement(lam) -> tuple:
    if not lam:
        return ()
    return complement(lam[0], len(lam), lam)


def block_form(lam):
    """``[(a_1, n_1), ..., (a_r, n_r)]`` with ``a_1 > ... > a_r > 0``."""
    out = []
    for p in lam:
        if out and out[-1][0] == p:
            out[-1][1] += 1
        else:
            out.append([p, 1])
    return [tuple(x) for x in out]


def corner_number(lam) -> int:
    return len(block_form(lam))


def rect_filtration(lam) -> list:
    """Rectangles ``(R_1, ..., R_r)`` obtained by iterating the exact complement."""
    if not lam:
        raise ValueError("the zero partition has no rectangular filtration")
    out = []
    cur = tuple(lam)
    while cur:
        out.append((cur[0],) * len(cur))
        if is_rectangle(cur):
            break
        cur = exact_complement(cur)
    return out


def rect_filtration_closed(lam) -> list:
    """Direct description of the filtration from the block form of ``lam``.

    With blocks ``a_1 > ... > a_r`` of multiplicities ``n_1..n_r`` (and
    ``a_{r+1} = 0``), the odd-indexed rectangle ``R_{2i+1}`` has side
    ``a_{i+1} - a_{r+1-i}`` and height ``n_{i+1} + ... + n_{r-i}``; the
    even-indexed ``R_{2i}`` has side ``a_i - a_{r+1-i}`` and height
    ``n_{i+1} + ... + n_{r+1-i}``.
    """
    if not lam:
        raise ValueError("the zero partition has no rectangular filtration")
    blocks = block_form(lam)
    r = len(blocks)
    a = [None] + [b[0] for b in blocks] + [0]
    n = [None] + [b[1] for b in blocks]
    out = []
    for idx in range(1, r + 1):
        i, odd = divmod(idx, 2)
        if odd:
            side = a[i + 1] - a[r + 1 - i]
            height = sum(n[j] for j in range(i + 1, r - i + 1))
        else:
            side = a[i] - a[r + 1 - i]
            height = sum(n[j] for j in range(i + 1, r - i + 2))
        out.append((side,) * height)
    return out


# -- multiset notions (m_i-wise) -----------------------------------------------

def is_submultiset(mu, lam) -> bool:
    """``mu ⊂' lam``: ``m_i(mu) <= m_i(lam)`` for all ``i``."""
    cl = Counter(lam)
    return all(cl[i] >= m for i, m in Counter(mu).items())


def multiset_diff(lam, mu) -> tuple:
    c = Counter(lam)
    c.subtract(Counter(mu))
    if any(v < 0 for v in c.values()):
        raise ValueError("multiset difference requires mu ⊂' lam")
    return tuple(sorted(c.elements(), reverse=True))


def multiset_union(lam, mu) -> tuple:
    return tuple(sorted(tuple(lam) + tuple(mu), reverse=True))


def mult_binomial(lam, mu) -> int:
    """``prod_i C(m_i(lam), m_i(mu))``; zero unless ``mu ⊂' lam``."""
    cl = Counter(lam)
    return prod(comb(cl[i], m) for i, m in Counter(mu).items())


@lru_cache(maxsize=200000)
def submultisets(lam) -> tuple:
    """All ``mu ⊂' lam`` as ``(mu, lam \\ mu, C(m(lam), m(mu)))`` triples."""
    blocks = block_form(lam)
    out = []
    for choice in product(*(range(m + 1) for _, m in blocks)):
        mu = []
        rest = []
        c = 1
        for (a, m), j in zip(blocks, choice):
            mu.extend([a] * j)
            rest.extend([a] * (m - j))
            c *= comb(m, j)
        out.append((tuple(mu), tuple(rest), c))
    return tuple(out)
