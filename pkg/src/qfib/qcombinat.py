"""q-integers, Gaussian binomials and the brute-force subset sums."""

from __future__ import annotations

import threading
from itertools import combinations
from math import comb

from .qring import ONE, Q, QLaurent, S, X, XsPoly, q_power

_rows: list[tuple[QLaurent, ...]] = [(QLaurent.const(1),)]
_rows_lock = threading.Lock()


def q_int(n: int) -> QLaurent:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return QLaurent({e: 1 for e in range(n)})


def q_factorial(n: int) -> QLaurent:
    out = QLaurent.const(1)
    for i in range(1, n + 1):
        out = out * q_int(i)
    return out


def _row(n: int) -> tuple[QLaurent, ...]:
    if n < len(_rows):
        return _rows[n]
    with _rows_lock:
        while len(_rows) <= n:
            prev = _rows[-1]
            m = len(prev) - 1  # prev is row m
            row = [QLaurent.const(1)]
            for k in range(1, m + 1):
                # [m+1, k] = q^k [m, k] + [m, k-1]
                row.append(prev[k].shift(k) + prev[k - 1])
            row.append(QLaurent.const(1))
            _rows.append(tuple(row))
    return _rows[n]


def q_binomial(n: int, k: int) -> QLaurent:
    """Gaussian binomial [n, k]_q; zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return QLaurent()
    return _row(n)[k]


def rothe_sides(n: int) -> tuple[XsPoly, XsPoly]:
    """(y + x)(y + qx)...(y + q^(n-1) x) and its q-binomial expansion.

    y lives in the s-slot.
    """
    product = ONE
    for i in range(n):
        product = product * (S + X * q_power(i))
    expansion = XsPoly.from_terms(
        {(k, n - k): q_binomial(n, k).shift(comb(k, 2)) for k in range(n + 1)}
    )
    return product, expansion


def subset_qsum(n: int, k: int) -> QLaurent:
    """Sum of q^(i_1 + ... + i_k) over all k-subsets of {1, ..., n}."""
    if not 0 <= k <= n:
        raise ValueError("subset_qsum needs 0 <= k <= n")
    counts: dict[int, int] = {}
    for sub in combinations(range(1, n + 1), k):
        e = sum(sub)
        counts[e] = counts.get(e, 0) + 1
    return QLaurent(counts)


def gauss_coeff(k: int, order: int) -> list[QLaurent]:
    """First order+1 coefficients of 1/((1-x)(1-qx)...(1-q^k x))."""
    series = [QLaurent.const(1)] + [QLaurent()] * order
    for i in range(k + 1):
        # divide by (1 - q^i x): out[n] = series[n] + q^i out[n-1]
        out = [series[0]]
        for n in range(1, order + 1):
            out.append(series[n] + out[-1].shift(i))
        series = out
    return series


__all__ = [
    "Q",
    "q_int",
    "q_factorial",
    "q_binomial",
    "rothe_sides",
    "subset_qsum",
    "gauss_coeff",
]
