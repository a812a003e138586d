"""Every Fibonacci/Lucas polynomial family, each by a closed form and a recurrence.

``family(fid, n, mode)`` is the single entry point.  Both modes are memoized
internally; the memo is invisible to callers.  A test-only perturbation hook
(:func:`perturbed`) lets the verification harness prove its own sensitivity.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

from .qcombinat import q_binomial, q_int
from .qring import (
    ONE,
    ZERO,
    QLaurent,
    S,
    X,
    XsPoly,
    compose,
    exact_div,
    monic_basis_expand,
    q_power,
    subst_scale,
)


class UnknownFamily(LookupError):
    pass


class FamilyId(str, Enum):
    fib_num = "fib_num"
    lucas_num = "lucas_num"
    F_xs = "F_xs"
    f_xs = "f_xs"
    L_xs = "L_xs"
    l_xs = "l_xs"
    F_carlitz = "F_carlitz"
    f_carlitz = "f_carlitz"
    L_carlitz = "L_carlitz"
    LB = "LB"
    LB_bold = "LB_bold"
    Fib = "Fib"
    fib = "fib"
    Luc = "Luc"
    luc = "luc"
    H = "H"
    RS = "RS"

    def __str__(self) -> str:
        return self.value


MODES = ("closed", "recursive")

# (p_0, p_1) for every family; RS uses y in the s-slot
INITIAL_VALUES: dict[FamilyId, tuple[XsPoly, XsPoly]] = {
    FamilyId.fib_num: (ZERO, ONE),
    FamilyId.lucas_num: (XsPoly.const(2), ONE),
    FamilyId.F_xs: (ZERO, ONE),
    FamilyId.f_xs: (ONE, X),
    FamilyId.L_xs: (XsPoly.const(2), X),
    FamilyId.l_xs: (ONE, X),
    FamilyId.F_carlitz: (ZERO, ONE),
    FamilyId.f_carlitz: (ONE, X),
    FamilyId.L_carlitz: (XsPoly.const(2), X),
    FamilyId.LB: (XsPoly.const(2), X),
    FamilyId.LB_bold: (XsPoly.const(2), X),
    FamilyId.Fib: (ZERO, ONE),
    FamilyId.fib: (ONE, X),
    FamilyId.Luc: (XsPoly.const(2), X),
    FamilyId.luc: (ONE, X),
    FamilyId.H: (ONE, X),
    FamilyId.RS: (ONE, X + S),
}


def as_family_id(fid) -> FamilyId:
    if isinstance(fid, FamilyId):
        return fid
    try:
        return FamilyId(fid)
    except ValueError:
        valid = ", ".join(f.value for f in FamilyId)
        raise UnknownFamily(f"unknown family {fid!r}; valid ids: {valid}") from None


def _sx(k: int, dx: int, coef) -> XsPoly:
    return XsPoly.monomial(dx, k, coef)


def _qbin_sum(n: int, top: int, coef, dx) -> XsPoly:
    out = ZERO
    for k in range(top + 1):
        out = out + _sx(k, dx(k), coef(k))
    return out


# closed forms --------------------------------------------------------------

def _lucas_coeff(n: int, j: int) -> int:
    value = comb(n - j, j) * Fraction(n, n - j)
    assert value.denominator == 1
    return int(value)


def _closed(fid: FamilyId, n: int) -> XsPoly:
    F = FamilyId
    if fid is F.fib_num:
        return XsPoly.const(sum(comb(n - 1 - j, j) for j in range((n - 1) // 2 + 1)))
    if fid is F.lucas_num:
        if n == 0:
            return XsPoly.const(2)
        return XsPoly.const(sum(_lucas_coeff(n, j) for j in range(n // 2 + 1)))
    if fid is F.F_xs:
        return _qbin_sum(n, (n - 1) // 2, lambda j: comb(n - 1 - j, j), lambda j: n - 1 - 2 * j)
    if fid is F.f_xs:
        return _qbin_sum(n, n // 2, lambda j: comb(n - j, j), lambda j: n - 2 * j)
    if fid in (F.L_xs, F.l_xs):
        if n == 0:
            return INITIAL_VALUES[fid][0]
        return _qbin_sum(n, n // 2, lambda j: _lucas_coeff(n, j), lambda j: n - 2 * j)
    if fid is F.F_carlitz:
        return _qbin_sum(
            n, (n - 1) // 2,
            lambda k: q_binomial(n - 1 - k, k).shift(k * k),
            lambda k: n - 1 - 2 * k,
        )
    if fid is F.f_carlitz:
        return _qbin_sum(
            n, n // 2, lambda k: q_binomial(n - k, k).shift(k * k), lambda k: n - 2 * k
        )
    if fid is F.L_carlitz:
        if n == 0:
            return XsPoly.const(2)
        return _qbin_sum(
            n, n // 2,
            lambda k: exact_div(q_binomial(n - k, k) * q_int(n), q_int(n - k)).shift(k * k - k),
            lambda k: n - 2 * k,
        )
    if fid is F.LB_bold:
        if n == 0:
            return XsPoly.const(2)
        return _qbin_sum(
            n, n // 2,
            lambda k: exact_div(
                q_binomial(n - k, k) * (q_int(n - k) + q_int(k)), q_int(n - k)
            ).shift(k * k - k),
            lambda k: n - 2 * k,
        )
    if fid is F.LB:
        if n == 0:
            return XsPoly.const(2)
        return _qbin_sum(
            n, n // 2,
            lambda k: exact_div(
                q_binomial(n - k, k) * (q_int(n - k) + q_int(k).shift(n - 2 * k)),
                q_int(n - k),
            ).shift(k * k),
            lambda k: n - 2 * k,
        )
    if fid is F.Fib:
        return _qbin_sum(
            n, (n - 1) // 2,
            lambda k: q_binomial(n - 1 - k, k).shift(comb(k + 1, 2)),
            lambda k: n - 1 - 2 * k,
        )
    if fid is F.fib:
        return _qbin_sum(
            n, n // 2,
            lambda k: q_binomial(n - k, k).shift(comb(k + 1, 2)),
            lambda k: n - 2 * k,
        )
    if fid in (F.Luc, F.luc):
        if n == 0:
            return INITIAL_VALUES[fid][0]
        return _qbin_sum(
            n, n // 2,
            lambda j: exact_div(q_binomial(n - j, j) * q_int(n), q_int(n - j)).shift(comb(j, 2)),
            lambda j: n - 2 * j,
        )
    if fid is F.H:
        # k stops at floor(n/2): l_m has no meaning for negative m
        out = ZERO
        for k in range(n // 2 + 1):
            out = out + _cached(F.l_xs, n - 2 * k, "closed") * _sx(k, 0, q_binomial(n, k) * (-1) ** k)
        return out
    if fid is F.RS:
        return XsPoly.from_terms({(k, n - k): q_binomial(n, k) for k in range(n + 1)})
    raise UnknownFamily(fid)


# recurrences ---------------------------------------------------------------

def _recursive(fid: FamilyId, n: int) -> XsPoly:
    F = FamilyId
    if fid in (F.L_carlitz, F.Luc, F.luc):
        if n == 0:
            return INITIAL_VALUES[fid][0]
        base = F.F_carlitz if fid is F.L_carlitz else F.Fib
        lower = _cached(base, n - 1, "recursive")
        if fid is F.L_carlitz:
            lower = subst_scale(lower, "s", 1)
        return _cached(base, n + 1, "recursive") + S * lower
    if n < 2:
        return INITIAL_VALUES[fid][n]
    p1 = _cached(fid, n - 1, "recursive")
    p2 = _cached(fid, n - 2, "recursive")
    if fid in (F.fib_num, F.lucas_num):
        return p1 + p2
    if fid in (F.F_xs, F.f_xs, F.L_xs):
        return X * p1 + S * p2
    if fid is F.l_xs:
        t = 2 if n == 2 else 1
        return X * p1 + S * p2 * t
    if fid in (F.F_carlitz, F.LB_bold):
        return X * p1 + S * p2 * q_power(n - 2)
    if fid is F.f_carlitz:
        return X * p1 + S * p2 * q_power(n - 1)
    if fid is F.LB:
        return X * subst_scale(p1, "s", 1) + S * subst_scale(p2, "s", 2) * q_power(1)
    if fid in (F.Fib, F.fib):
        return X * subst_scale(p1, "s", 1) + S * subst_scale(p2, "s", 1) * q_power(1)
    if fid is F.H:
        return X * p1 + S * p2 * (1 - q_power(n - 1))
    if fid is F.RS:
        return (X + S) * p1 + X * S * p2 * (q_power(n - 1) - 1)
    raise UnknownFamily(fid)


@lru_cache(maxsize=None)
def _cached(fid: FamilyId, n: int, mode: str) -> XsPoly:
    if mode == "closed":
        return _closed(fid, n)
    return _recursive(fid, n)


_perturbations: dict[tuple[FamilyId, int], XsPoly] = {}
_perturb_lock = threading.Lock()


@contextmanager
def perturbed(fid, n: int, delta: XsPoly | int = 1):
    """Temporarily add ``delta`` to every value ``family(fid, n, ...)`` returns."""
    key = (as_family_id(fid), n)
    with _perturb_lock:
        _perturbations[key] = XsPoly._coerce(delta)
    try:
        yield
    finally:
        with _perturb_lock:
            _perturbations.pop(key, None)


def family(fid, n: int, mode: str = "closed") -> XsPoly:
    """The polynomial of family ``fid`` at index ``n``."""
    fid = as_family_id(fid)
    if n < 0:
        raise ValueError(f"family index must be >= 0, got {n}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected closed or recursive")
    value = _cached(fid, n, mode)
    if _perturbations:
        delta = _perturbations.get((fid, n))
        if delta is not None:
            value = value + delta
    return value


@lru_cache(maxsize=None)
def q_catalan(n: int) -> QLaurent:
    """Carlitz q-Catalan number c_n(q), the 2n-th moment of f_n(x, -1/q, q).

    With s = -1/q the Carlitz recurrence reads x f_j = f_(j+1) + q^(j-1) f_(j-1),
    so the expansion of x^m in the f-basis is updated one power of x at a time.
    """
    if n < 0:
        raise ValueError("q_catalan needs n >= 0")
    row = [QLaurent.const(1)]
    for _ in range(2 * n):
        nxt = [QLaurent() for _ in range(len(row) + 1)]
        for j, a in enumerate(row):
            if a:
                nxt[j + 1] = nxt[j + 1] + a
                if j:
                    nxt[j - 1] = nxt[j - 1] + a.shift(j - 1)
        row = nxt
    return row[0]


def carlitz_moment(m: int) -> XsPoly:
    """Lambda(x^m) for the Carlitz basis f_k(x, s, q), by triangular solve."""
    basis = [family(FamilyId.f_carlitz, k) for k in range(m + 1)]
    return monic_basis_expand(XsPoly.monomial(m, 0), basis)[0]


def fib_pentagonal(n: int) -> QLaurent:
    """Fib_n(1, -1/q, q)."""
    value = compose(family(FamilyId.Fib, n), ONE, XsPoly.const(QLaurent({-1: -1})))
    assert value.is_constant()
    return value.constant()


def pentagonal_expected(n: int) -> QLaurent:
    """Closed form of ``fib_pentagonal``: 0, (-1)^m q^r(m), (-1)^m q^r(-m)."""
    def r(m):
        return m * (3 * m - 1) // 2

    m, rem = divmod(n, 3)
    if rem == 0:
        return QLaurent()
    return QLaurent({r(m) if rem == 1 else r(-m): (-1) ** m})


def clear_caches() -> None:
    _cached.cache_clear()
    q_catalan.cache_clear()
