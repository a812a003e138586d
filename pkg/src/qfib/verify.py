"""Identity registry and verification reports.

Each registered identity is a generator that yields ``(indices, lhs, rhs)``
triples; the harness compares the two sides structurally and records the
first mismatch.  Sides are computed through different routes wherever two
exist (closed form vs recurrence, matrix product vs addition formula,
enumeration vs family, operator vs coefficient formula).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from . import morse
from .families import FamilyId, carlitz_moment, family, fib_pentagonal, pentagonal_expected, q_catalan
from .operators import DQ, EPS, IDENTITY as ID_OP, MUL_X, a_powers, moment, phi_map, rs_operator, scale, t_s_transform
from .qcombinat import gauss_coeff, q_binomial, q_factorial, q_int, rothe_sides, subset_qsum
from .qring import (
    IDENTITY,
    ONE,
    ZERO,
    Mat2,
    QLaurent,
    S,
    X,
    XsPoly,
    compose,
    eval_point,
    exact_div,
    q_power,
    render,
    render_q,
    subst_scale,
)
from .qseries import ZSeries, gf, gf_summand


class UnknownIdentity(LookupError):
    pass


Fam = FamilyId


@dataclass(frozen=True)
class Identity:
    name: str
    equation: str
    check: Callable[..., Iterator]
    uses: frozenset = frozenset()
    start: int = 0
    default_n: int = 20
    index: str = "n"
    second: str | None = None  # name of the mmax-driven index, if any
    second_start: int = 0

    @property
    def arity(self) -> int:
        return 1 if self.second is None else 2


@dataclass
class Counterexample:
    indices: dict
    lhs: str
    rhs: str


@dataclass
class VerifyReport:
    name: str
    equation: str
    ranges: dict
    passed: bool
    counterexample: Counterexample | None = None
    elapsed_ms: float = 0.0

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "equation": self.equation,
            "range": {k: list(v) for k, v in self.ranges.items()},
            "pass": self.passed,
            "counterexample": asdict(self.counterexample) if self.counterexample else None,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


REGISTRY: dict[str, Identity] = {}
MUTANTS: dict[str, Identity] = {}


def identity(name: str, equation: str, uses=(), registry=REGISTRY, **kw):
    def deco(fn):
        registry[name] = Identity(name, equation, fn, frozenset(Fam(u) for u in uses), **kw)
        return fn

    return deco


def f(fid, n: int, mode: str = "closed") -> XsPoly:
    return family(fid, n, mode)


def sk(k: int, coef: QLaurent | int = 1) -> XsPoly:
    """coef * s^k"""
    return XsPoly.monomial(0, k, coef)


def neg_s_pow(k: int, coef: QLaurent | int = 1) -> XsPoly:
    """(-s)^k * coef"""
    return sk(k, QLaurent._coerce(coef) * (-1) ** k)


def num(fid, n: int, mode: str = "closed") -> int:
    value = f(fid, n, mode)
    if not value:
        return 0
    if not value.is_constant():
        raise ValueError(f"{fid}({n}) = {render(value)} is not a number")
    return value.constant().at_one()


def _fib_signed(n: int) -> int:
    """F_n extended to n = -1 by F_(-1) = 1."""
    return 1 if n == -1 else num(Fam.fib_num, n)


def U_xs(s_shift: int = 0) -> Mat2:
    return Mat2.of(ZERO, ONE, sk(1, q_power(s_shift)), X)


def carlitz_M(n: int, s_shift: int = 0) -> Mat2:
    """M_n(x, q^s_shift s, q) built from Carlitz polynomial values."""
    def F(k, extra=0):
        return subst_scale(f(Fam.F_carlitz, k), "s", s_shift + extra)

    s = sk(1, q_power(s_shift))
    # M_0 is the identity: s F_(-1)(x, qs, q) = 1
    corner = s * F(n - 1, 1) if n >= 1 else ONE
    return Mat2(corner, F(n), s * F(n, 1), F(n + 1))


def carlitz_M_product(n: int, s_shift: int = 0) -> Mat2:
    """U(x, q^(n-1) s) ... U(x, q s) U(x, s), everything scaled by q^s_shift."""
    out = IDENTITY
    for i in range(n):
        out = U_xs(s_shift + i) @ out
    return out


# Fibonacci and Lucas numbers ------------------------------------------------

@identity("lucas-fibonacci", "2", uses=["fib_num", "lucas_num"], start=1)
def _(ns):
    for n in ns:
        yield {"n": n}, num(Fam.lucas_num, n), num(Fam.fib_num, n + 1) + num(Fam.fib_num, n - 1)


@identity("fibonacci-matrix", "3", uses=["fib_num"], start=1)
def _(ns):
    U = Mat2.of(0, 1, 1, 1)
    P = IDENTITY
    for n in range(ns.stop):
        if n in ns:
            expect = Mat2.of(*(num(Fam.fib_num, k) for k in (n - 1, n, n, n + 1)))
            yield {"n": n}, P, expect
        P = U @ P


@identity("fibonacci-addition", "4", uses=["fib_num"], index="m", start=1, default_n=8, second="n")
def _(ms, ns):
    for m in ms:
        for n in ns:
            rhs = _fib_signed(m - 1) * num(Fam.fib_num, n) + num(Fam.fib_num, m) * num(Fam.fib_num, n + 1)
            yield {"m": m, "n": n}, num(Fam.fib_num, m + n), rhs


@identity("cassini", "5", uses=["fib_num"], start=1)
def _(ns):
    for n in ns:
        F = lambda k: num(Fam.fib_num, k)
        yield {"n": n}, F(n - 1) * F(n + 1) - F(n) ** 2, (-1) ** n


@identity("fibonacci-doubling", "6", uses=["fib_num"], default_n=8, second="m")
def _(ns, ms):
    for n in ns:
        for m in ms:
            rhs = sum(comb(n, k) * num(Fam.fib_num, k + m) for k in range(n + 1))
            yield {"n": n, "m": m}, num(Fam.fib_num, 2 * n + m), rhs


@identity("lucas-trace", "7", uses=["lucas_num"])
def _(ns):
    U = Mat2.of(0, 1, 1, 1)
    for n in ns:
        yield {"n": n}, num(Fam.lucas_num, n), (U**n).trace()


@identity("gf-fibonacci", "8", uses=["fib_num"])
def _(ns):
    N = ns.stop - 1
    series = gf("fib_num", N)
    yield {"n": N, "part": "defining relation"}, ZSeries.of([1, -1, -1], N) * series, ZSeries.of([1], N)
    for n in ns:
        yield {"n": n}, series[n], f(Fam.fib_num, n + 1)


@identity("gf-lucas", "9", uses=["lucas_num"])
def _(ns):
    series = gf("lucas_num", ns.stop - 1)
    for n in ns:
        yield {"n": n}, series[n], f(Fam.lucas_num, n)


@identity("fibonacci-binomial-sum", "10", uses=["fib_num"])
def _(ns):
    for n in ns:
        yield {"n": n}, num(Fam.fib_num, n + 1, "recursive"), sum(comb(n - j, j) for j in range(n // 2 + 1))


@identity("morse-count", "12", uses=["fib_num"], default_n=16)
def _(ns):
    for n in ns:
        yield {"n": n}, morse.oracle("count", n), f(Fam.fib_num, n + 1)


@identity("periodic-count", "13", uses=["lucas_num"], start=1, default_n=16)
def _(ns):
    for n in ns:
        yield {"n": n}, morse.oracle("periodic_count", n), f(Fam.lucas_num, n)


@identity("lucas-binomial-sum", "14", uses=["lucas_num"], start=1)
def _(ns):
    for n in ns:
        rhs = sum(comb(n - j, j) * Fraction(n, n - j) for j in range(n // 2 + 1))
        yield {"n": n}, num(Fam.lucas_num, n, "recursive"), rhs


@identity("fibonacci-divisibility", "divisibility", uses=["fib_num", "lucas_num"], index="k", default_n=8, second="n", second_start=1)
def _(ks, ns):
    for n in ns:
        # (z - a^n)(z - b^n) = z^2 - L_n z + (-1)^n
        Ln = num(Fam.lucas_num, n)
        seq = [0, 1]
        while len(seq) <= ks.stop:
            seq.append(Ln * seq[-1] - (-1) ** n * seq[-2])
        for k in ks:
            yield {"k": k, "n": n}, num(Fam.fib_num, k * n), seq[k] * num(Fam.fib_num, n)


# bivariate polynomials -----------------------------------------------------

@identity("fibonacci-xs-recurrence", "16", uses=["F_xs"], start=2)
def _(ns):
    for n in ns:
        yield {"n": n}, f(Fam.F_xs, n), X * f(Fam.F_xs, n - 1) + S * f(Fam.F_xs, n - 2)


@identity("morse-weight", "20", uses=["f_xs"], default_n=16)
def _(ns):
    for n in ns:
        yield {"n": n}, morse.oracle("w_sum", n), f(Fam.f_xs, n)


@identity("combinatorial-xs-recurrence", "21", uses=["f_xs"], start=2)
def _(ns):
    for n in ns:
        yield {"n": n}, f(Fam.f_xs, n), X * f(Fam.f_xs, n - 1) + S * f(Fam.f_xs, n - 2)


@identity("binet-surrogate-fibonacci", "22", uses=["F_xs"])
def _(ns):
    for n in ns:
        rhs = sum((X**i * S ** (n - 1 - i) for i in range(n)), ZERO)
        yield {"n": n}, compose(f(Fam.F_xs, n), X + S, -X * S), rhs


@identity("period-six", "23", uses=["F_xs"], default_n=60)
def _(ns):
    for n in ns:
        m, r = divmod(n, 3)
        expect = 0 if r == 0 else (-1) ** m
        yield {"n": n}, eval_point(f(Fam.F_xs, n), 2, 1, -1), expect


@identity("fibonacci-xs-matrix", "24", uses=["F_xs"], start=1)
def _(ns):
    P = IDENTITY
    U = U_xs()
    for n in range(ns.stop):
        if n in ns:
            F = lambda k: f(Fam.F_xs, k)
            yield {"n": n}, P, Mat2(S * F(n - 1), F(n), S * F(n), F(n + 1))
        P = U @ P


@identity("cassini-xs", "25", uses=["F_xs"], start=1)
def _(ns):
    for n in ns:
        F = lambda k: f(Fam.F_xs, k)
        yield {"n": n}, F(n) * F(n) - F(n - 1) * F(n + 1), neg_s_pow(n - 1)


@identity("addition-xs", "26", uses=["F_xs"], index="m", start=1, default_n=8, second="n")
def _(ms, ns):
    F = lambda k: f(Fam.F_xs, k)
    for m in ms:
        for n in ns:
            yield {"m": m, "n": n}, F(m + n), F(m) * F(n + 1) + S * F(m - 1) * F(n)


@identity("doubling-xs", "27", uses=["F_xs"], default_n=8, second="m")
def _(ns, ms):
    F = lambda k: f(Fam.F_xs, k)
    for n in ns:
        for m in ms:
            rhs = sum((X ** (n - k) * sk(k, comb(n, k)) * F(n - k + m) for k in range(n + 1)), ZERO)
            yield {"n": n, "m": m}, F(2 * n + m), rhs


@identity("lucas-xs-definition", "28", uses=["L_xs", "F_xs"], start=1)
def _(ns):
    for n in ns:
        yield {"n": n}, f(Fam.L_xs, n), f(Fam.F_xs, n + 1) + S * f(Fam.F_xs, n - 1)


@identity("lucas-xs-recurrence", "29", uses=["L_xs"], start=2)
def _(ns):
    for n in ns:
        yield {"n": n}, f(Fam.L_xs, n), X * f(Fam.L_xs, n - 1) + S * f(Fam.L_xs, n - 2)


@identity("lucas-xs-trace", "31", uses=["L_xs"])
def _(ns):
    P = IDENTITY
    U = U_xs()
    for n in range(ns.stop):
        if n in ns:
            yield {"n": n}, f(Fam.L_xs, n), P.trace()
        P = U @ P


@identity("periodic-lucas", "33-35", uses=["l_xs", "f_xs"], start=2, default_n=16)
def _(ns):
    for n in ns:
        combo = f(Fam.f_xs, n) + S * f(Fam.f_xs, n - 2)
        yield {"n": n, "part": "periodic weight"}, morse.oracle("periodic_w", n), combo
        yield {"n": n, "part": "combination"}, f(Fam.l_xs, n), combo
        t = 2 if n == 2 else 1
        yield {"n": n, "part": "recurrence"}, f(Fam.l_xs, n), X * f(Fam.l_xs, n - 1) + S * f(Fam.l_xs, n - 2) * t


@identity("binet-surrogate-lucas", "36", uses=["L_xs"])
def _(ns):
    for n in ns:
        yield {"n": n}, compose(f(Fam.L_xs, n), X + S, -X * S), X**n + S**n


@identity("gf-xs", "37", uses=["f_xs", "L_xs"])
def _(ns):
    N = ns.stop - 1
    fs, ls = gf("f_xs", N), gf("L_xs", N)
    for n in ns:
        yield {"n": n, "part": "f"}, fs[n], f(Fam.f_xs, n)
        yield {"n": n, "part": "L"}, ls[n], f(Fam.L_xs, n)


@identity("inversion-xs", "38", uses=["f_xs", "l_xs"])
def _(ns):
    for n in ns:
        top = n // 2 + 1
        lhs_l = sum((neg_s_pow(k, comb(n, k)) * f(Fam.l_xs, n - 2 * k) for k in range(top)), ZERO)
        lhs_f = sum(
            (neg_s_pow(k, comb(n, k) - (comb(n, k - 1) if k else 0)) * f(Fam.f_xs, n - 2 * k) for k in range(top)),
            ZERO,
        )
        yield {"n": n, "part": "l"}, lhs_l, X**n
        yield {"n": n, "part": "f"}, lhs_f, X**n


@identity("moments-xs", "40", uses=["f_xs", "l_xs"], default_n=12)
def _(ns):
    for n in ns:
        catalan = comb(2 * n, n) // (n + 1)
        yield {"n": n, "part": "f even"}, moment(Fam.f_xs, 2 * n), neg_s_pow(n, catalan)
        yield {"n": n, "part": "f odd"}, moment(Fam.f_xs, 2 * n + 1), ZERO
        yield {"n": n, "part": "l even"}, moment(Fam.l_xs, 2 * n), neg_s_pow(n, comb(2 * n, n))
        yield {"n": n, "part": "l odd"}, moment(Fam.l_xs, 2 * n + 1), ZERO


# q toolbox -----------------------------------------------------------------

@identity("qbinomial-symmetry", "41")
def _(ns):
    for n in ns:
        for k in range(n + 1):
            yield {"n": n, "k": k}, q_binomial(n, k), q_binomial(n, n - k)
            factorial = exact_div(q_factorial(n), q_factorial(k) * q_factorial(n - k))
            yield {"n": n, "k": k, "part": "factorial"}, q_binomial(n, k), factorial


@identity("qbinomial-pascal", "42")
def _(ns):
    for n in ns:
        for k in range(n + 2):
            yield {"n": n, "k": k, "part": "first"}, q_binomial(n + 1, k), q_binomial(n, k).shift(k) + q_binomial(n, k - 1)
            yield {"n": n, "k": k, "part": "second"}, q_binomial(n + 1, k), q_binomial(n, k) + q_binomial(n, k - 1).shift(n + 1 - k)


@identity("rogers-szego-operator", "45", uses=["RS"])
def _(ns):
    for n in ns:
        yield {"n": n}, rs_operator(n), f(Fam.RS, n)


@identity("rogers-szego-derivative", "46", uses=["RS"], start=1)
def _(ns):
    for n in ns:
        yield {"n": n}, DQ(f(Fam.RS, n)), f(Fam.RS, n - 1) * q_int(n)


@identity("rogers-szego-recurrence", "47", uses=["RS"], start=2)
def _(ns):
    for n in ns:
        rhs = (X + S) * f(Fam.RS, n - 1) + X * S * f(Fam.RS, n - 2) * (q_power(n - 1) - 1)
        yield {"n": n}, f(Fam.RS, n), rhs


@identity("dilation-operator", "48")
def _(ns):
    other = ID_OP + scale(q_power(1) - 1) * MUL_X * DQ
    for n in ns:
        for k in range(6):
            p = XsPoly.monomial(n, k)
            yield {"n": n, "k": k}, EPS(p), other(p)


@identity("rothe", "49")
def _(ns):
    for n in ns:
        product, expansion = rothe_sides(n)
        yield {"n": n}, product, expansion


@identity("subset-qsum", "50", default_n=12)
def _(ns):
    for n in ns:
        for k in range(n + 1):
            yield {"n": n, "k": k}, subset_qsum(n, k), q_binomial(n, k).shift(comb(k + 1, 2))


@identity("gauss-series", "51", index="k")
def _(ks):
    order = ks.stop - 1
    for k in ks:
        coeffs = gauss_coeff(k, order)
        for n in range(order + 1):
            yield {"k": k, "n": n}, coeffs[n], q_binomial(n + k, n)


# Carlitz polynomials -------------------------------------------------------

@identity("carlitz-recurrences", "52-54", uses=["F_carlitz", "f_carlitz"], start=2)
def _(ns):
    for n in ns:
        F = lambda k: f(Fam.F_carlitz, k)
        g = lambda k: f(Fam.f_carlitz, k)
        yield {"n": n, "part": "F"}, F(n), X * F(n - 1) + S * F(n - 2) * q_power(n - 2)
        yield {"n": n, "part": "f"}, g(n), X * g(n - 1) + S * g(n - 2) * q_power(n - 1)


@identity("carlitz-morse", "56", uses=["f_carlitz"], default_n=16)
def _(ns):
    for n in ns:
        yield {"n": n}, morse.oracle("v_sum", n), f(Fam.f_carlitz, n)


@identity("carlitz-first-element", "57", uses=["f_carlitz"], start=2)
def _(ns):
    for n in ns:
        g = lambda k, j: subst_scale(f(Fam.f_carlitz, k), "s", j)
        yield {"n": n}, g(n, 0), X * g(n - 1, 1) + S * g(n - 2, 2) * q_power(1)


@identity("carlitz-matrix", "59", uses=["F_carlitz"], start=1)
def _(ns):
    for n in ns:
        yield {"n": n}, carlitz_M_product(n), carlitz_M(n)


@identity("cassini-q", "60", uses=["F_carlitz"], start=1)
def _(ns):
    for n in ns:
        F = lambda k, j=0: subst_scale(f(Fam.F_carlitz, k), "s", j)
        lhs = F(n) * F(n, 1) - F(n - 1, 1) * F(n + 1)
        yield {"n": n}, lhs, neg_s_pow(n - 1, q_power(comb(n, 2)))


@identity("cassini-q-mutated", "60", uses=["F_carlitz"], start=1, registry=MUTANTS)
def _(ns):
    # deliberately wrong exponent n(n-1) in place of C(n, 2)
    for n in ns:
        F = lambda k, j=0: subst_scale(f(Fam.F_carlitz, k), "s", j)
        lhs = F(n) * F(n, 1) - F(n - 1, 1) * F(n + 1)
        yield {"n": n}, lhs, neg_s_pow(n - 1, q_power(n * (n - 1)))


@identity("addition-q", "61", uses=["F_carlitz"], index="m", start=1, default_n=8, second="n")
def _(ms, ns):
    F = lambda k, j=0: subst_scale(f(Fam.F_carlitz, k), "s", j)
    for m in ms:
        for n in ns:
            rhs = F(m, n) * F(n + 1) + sk(1, q_power(n)) * F(m - 1, n + 1) * F(n)
            yield {"m": m, "n": n, "part": "formula"}, F(m + n), rhs
            yield {"m": m, "n": n, "part": "matrix"}, carlitz_M(m + n), carlitz_M(m, n) @ carlitz_M(n)


@identity("doubling-q", "62", uses=["f_carlitz"], default_n=12)
def _(ns):
    g = lambda k: f(Fam.f_carlitz, k)
    for n in ns:
        rhs = sum(
            (XsPoly.monomial(n - k, k, q_binomial(n, k).shift(k * n)) * g(n - k) for k in range(n + 1)),
            ZERO,
        )
        yield {"n": n}, g(2 * n), rhs


@identity("gf-carlitz", "63", uses=["f_carlitz"])
def _(ns):
    series = gf("f_carlitz", ns.stop - 1)
    for n in ns:
        yield {"n": n}, series[n], f(Fam.f_carlitz, n)


@identity("carlitz-lucas", "64", uses=["L_carlitz", "F_carlitz"])
def _(ns):
    for n in ns:
        yield {"n": n, "part": "trace"}, f(Fam.L_carlitz, n), carlitz_M_product(n).trace()
        if n >= 1:
            F = lambda k, j=0: subst_scale(f(Fam.F_carlitz, k), "s", j)
            yield {"n": n, "part": "sum"}, f(Fam.L_carlitz, n), F(n + 1) + S * F(n - 1, 1)


@identity("belbachir-benmezai", "65-67", uses=["LB", "LB_bold", "L_carlitz", "L_xs"])
def _(ns):
    B = lambda k, j=0: subst_scale(f(Fam.LB, k), "s", j)
    Bb = lambda k: f(Fam.LB_bold, k)
    for n in ns:
        yield {"n": n, "part": "sum"}, B(n) + Bb(n), f(Fam.L_carlitz, n) * 2
        yield {"n": n, "part": "q=1 LB"}, B(n).at_q_one(), f(Fam.L_xs, n)
        yield {"n": n, "part": "q=1 bold"}, Bb(n).at_q_one(), f(Fam.L_xs, n)
        if n >= 2:
            yield {"n": n, "part": "bold recurrence"}, Bb(n), X * Bb(n - 1) + S * Bb(n - 2) * q_power(n - 2)
            yield {"n": n, "part": "recurrence"}, B(n), X * B(n - 1, 1) + S * B(n - 2, 2) * q_power(1)


# Fib and Luc ---------------------------------------------------------------

@identity("fib-morse", "69", uses=["Fib"], default_n=16)
def _(ns):
    for n in ns:
        yield {"n": n}, morse.oracle("W_sum", n), f(Fam.Fib, n)


@identity("fib-recurrences", "70-73", uses=["Fib"], start=2)
def _(ns):
    G = lambda k, j=0: subst_scale(f(Fam.Fib, k), "s", j)
    for n in ns:
        yield {"n": n, "part": "first element"}, G(n), X * G(n - 1, 1) + S * G(n - 2, 1) * q_power(1)
        yield {"n": n, "part": "last element"}, G(n), X * G(n - 1) + S * G(n - 2, -1) * q_power(n - 2)
        if n >= 4:
            rhs = X * G(n - 1) + (S * X * G(n - 3) + S * S * G(n - 4)) * q_power(n - 2)
            yield {"n": n, "part": "four term"}, G(n), rhs


@identity("pentagonal", "74-76", uses=["Fib"], default_n=60)
def _(ns):
    for n in ns:
        yield {"n": n}, fib_pentagonal(n), pentagonal_expected(n)
        if n >= 3:
            yield {"n": n, "part": "shift by three"}, fib_pentagonal(n), -fib_pentagonal(n - 3).shift(n - 3)


@identity("fib-derivative-recurrence", "78", uses=["Fib"], start=2)
def _(ns):
    G = lambda k: f(Fam.Fib, k)
    for n in ns:
        rhs = X * G(n - 1) + S * DQ(G(n - 1)) * (q_power(1) - 1) + S * G(n - 2)
        yield {"n": n}, G(n), rhs


@identity("ts-fibonacci", "79", uses=["F_xs", "Fib"])
def _(ns):
    for n in ns:
        yield {"n": n}, t_s_transform(f(Fam.F_xs, n)), f(Fam.Fib, n)


@identity("ts-lucas", "81", uses=["L_xs", "Luc"])
def _(ns):
    for n in ns:
        yield {"n": n}, t_s_transform(f(Fam.L_xs, n)), f(Fam.Luc, n)


@identity("luc-fib", "82", uses=["Luc", "Fib"], start=1)
def _(ns):
    for n in ns:
        yield {"n": n}, f(Fam.Luc, n), f(Fam.Fib, n + 1) + S * f(Fam.Fib, n - 1)


@identity("luc-closed", "83", uses=["Luc", "luc"], start=1)
def _(ns):
    for n in ns:
        for j in range(n // 2 + 1):
            lhs = q_binomial(n - j, j).shift(comb(j + 1, 2)) + q_binomial(n - 1 - j, j - 1).shift(comb(j, 2))
            yield {"n": n, "j": j, "part": "coefficient"}, lhs, f(Fam.Luc, n).coeff(n - 2 * j, j)
        yield {"n": n, "part": "combinatorial analog"}, f(Fam.luc, n), f(Fam.Luc, n)


@identity("inversion-q", "85", uses=["fib", "luc"])
def _(ns):
    for n in ns:
        top = n // 2 + 1
        lhs_f = sum(
            (neg_s_pow(k, q_binomial(n, k) - q_binomial(n, k - 1)) * f(Fam.fib, n - 2 * k) for k in range(top)),
            ZERO,
        )
        lhs_l = sum((neg_s_pow(k, q_binomial(n, k)) * f(Fam.luc, n - 2 * k) for k in range(top)), ZERO)
        yield {"n": n, "part": "fib"}, lhs_f, X**n
        yield {"n": n, "part": "luc"}, lhs_l, X**n


@identity("moments-fib", "86", uses=["fib"], default_n=12)
def _(ns):
    for n in ns:
        value = exact_div(q_binomial(2 * n, n), q_int(n + 1)).shift(n)
        yield {"n": n, "part": "even"}, moment(Fam.fib, 2 * n), neg_s_pow(n, value)
        yield {"n": n, "part": "odd"}, moment(Fam.fib, 2 * n + 1), ZERO


@identity("moments-luc", "87", uses=["luc"], default_n=12)
def _(ns):
    for n in ns:
        yield {"n": n, "part": "even"}, moment(Fam.luc, 2 * n), neg_s_pow(n, q_binomial(2 * n, n))
        yield {"n": n, "part": "odd"}, moment(Fam.luc, 2 * n + 1), ZERO


@identity("h-recurrence", "89", uses=["H"], start=2)
def _(ns):
    for n in ns:
        rhs = X * f(Fam.H, n - 1) + S * f(Fam.H, n - 2) * (1 - q_power(n - 1))
        yield {"n": n}, f(Fam.H, n), rhs


@identity("h-operator", "90", uses=["H"], default_n=16)
def _(ns):
    for n in ns:
        yield {"n": n}, t_s_transform(f(Fam.H, n)), X**n


@identity("h-rogers-szego", "91", uses=["H", "RS"], default_n=14)
def _(ns):
    for n in ns:
        yield {"n": n}, compose(f(Fam.H, n), X + S, -X * S), f(Fam.RS, n)


@identity("gf-fib", "92", uses=["fib"])
def _(ns):
    N = ns.stop - 1
    series = gf("fib", N)
    for n in ns:
        yield {"n": n}, series[n], f(Fam.fib, n)
    for k in range(N // 2 + 1):
        summand = gf_summand(k, N, comb(k + 1, 2))
        for n in range(N - 2 * k + 1):
            expect = XsPoly.monomial(n, k, q_binomial(n + k, k).shift(comb(k + 1, 2)))
            yield {"k": k, "n": n, "part": "summand"}, summand[2 * k + n], expect


@identity("q-binet-surrogates", "93", uses=["RS"], start=1)
def _(ns):
    R = lambda k: f(Fam.RS, k)
    mxy = -X * S
    for n in ns:
        lhs = sum(
            (R(n - 1 - 2 * k) * mxy**k * q_binomial(n - 1 - k, k).shift(comb(k + 1, 2)) for k in range((n - 1) // 2 + 1)),
            ZERO,
        )
        yield {"n": n, "part": "fibonacci"}, lhs, sum((X**i * S ** (n - 1 - i) for i in range(n)), ZERO)
        lhs = sum(
            (
                R(n - 2 * k) * mxy**k * exact_div(q_binomial(n - k, k) * q_int(n), q_int(n - k)).shift(comb(k, 2))
                for k in range(n // 2 + 1)
            ),
            ZERO,
        )
        yield {"n": n, "part": "lucas"}, lhs, X**n + S**n


def _carlitz_l(n: int, j: int = 0) -> XsPoly:
    """l_n(x, q^j s, q): the Carlitz q-Lucas family with l_0 = 1."""
    return ONE if n == 0 else subst_scale(f(Fam.L_carlitz, n), "s", j)


@identity("phi-transfer", "95", uses=["fib", "f_carlitz", "Luc", "L_carlitz"])
def _(ns):
    for n in ns:
        yield {"n": n, "part": "fib"}, phi_map(f(Fam.fib, n)), f(Fam.f_carlitz, n)
        yield {"n": n, "part": "Luc"}, phi_map(f(Fam.Luc, n)), f(Fam.L_carlitz, n)
        yield {"n": n, "part": "round trip"}, phi_map(phi_map(f(Fam.fib, n)), "inverse"), f(Fam.fib, n)


@identity("phi-shift", "96", uses=["fib", "f_carlitz", "luc", "L_carlitz"], default_n=8, second="k")
def _(ns, ks):
    for n in ns:
        for k in ks:
            c = q_power(comb(k, 2))
            lhs = phi_map(sk(k) * f(Fam.fib, n))
            yield {"n": n, "k": k, "part": "fib"}, lhs, sk(k, c) * subst_scale(f(Fam.f_carlitz, n), "s", k)
            lhs = phi_map(sk(k) * f(Fam.luc, n))
            yield {"n": n, "k": k, "part": "luc"}, lhs, sk(k, c) * _carlitz_l(n, k)


@identity("transferred-inversion", "97", uses=["f_carlitz", "L_carlitz"], default_n=16)
def _(ns):
    for n in ns:
        top = n // 2 + 1
        lhs_f = sum(
            (
                neg_s_pow(k, (q_binomial(n, k) - q_binomial(n, k - 1)).shift(comb(k, 2)))
                * subst_scale(f(Fam.f_carlitz, n - 2 * k), "s", k)
                for k in range(top)
            ),
            ZERO,
        )
        lhs_l = sum(
            (neg_s_pow(k, q_binomial(n, k).shift(comb(k, 2))) * _carlitz_l(n - 2 * k, k) for k in range(top)),
            ZERO,
        )
        yield {"n": n, "part": "f"}, lhs_f, X**n
        yield {"n": n, "part": "l"}, lhs_l, X**n


# composites ----------------------------------------------------------------

@identity("mode-agreement", "composite", uses=list(Fam))
def _(ns):
    for fid in Fam:
        for n in ns:
            yield {"family": fid.value, "n": n}, f(fid, n, "closed"), f(fid, n, "recursive")


# q-family -> classical counterpart and index shift
Q_ONE_PAIRS = [
    (Fam.F_carlitz, Fam.F_xs, 0),
    (Fam.f_carlitz, Fam.f_xs, 0),
    (Fam.L_carlitz, Fam.L_xs, 0),
    (Fam.LB, Fam.L_xs, 0),
    (Fam.LB_bold, Fam.L_xs, 0),
    (Fam.Fib, Fam.F_xs, 0),
    (Fam.fib, Fam.F_xs, 1),
    (Fam.fib, Fam.f_xs, 0),
    (Fam.Luc, Fam.L_xs, 0),
    (Fam.luc, Fam.l_xs, 0),
]


@identity("q-one-degeneration", "composite", uses=[a for a, _, _ in Q_ONE_PAIRS] + [b for _, b, _ in Q_ONE_PAIRS] + ["H", "RS"])
def _(ns):
    for n in ns:
        for qfam, classical, shift in Q_ONE_PAIRS:
            yield {"family": qfam.value, "n": n}, f(qfam, n).at_q_one(), f(classical, n + shift)
        yield {"family": "H", "n": n}, f(Fam.H, n).at_q_one(), X**n
        yield {"family": "RS", "n": n}, f(Fam.RS, n).at_q_one(), (X + S) ** n


@identity("q-catalan", "composite", uses=["f_carlitz"])
def _(ns):
    for n in ns:
        rhs = sum((q_catalan(k).shift(k) * q_catalan(n - 1 - k) for k in range(n)), QLaurent()) if n else QLaurent.const(1)
        yield {"n": n}, q_catalan(n), rhs
        if n <= 6:
            # the same number from the f_carlitz triangular solve, s^n read at s = -1/q
            m = carlitz_moment(2 * n)
            yield {"n": n, "part": "moment"}, m, sk(n, q_catalan(n).shift(n) * (-1) ** n)


# harness -------------------------------------------------------------------

def lookup(name: str) -> Identity:
    ident = REGISTRY.get(name) or MUTANTS.get(name)
    if ident is None:
        raise UnknownIdentity(f"unknown identity {name!r}")
    return ident


def _show(value) -> str:
    if isinstance(value, XsPoly):
        return render(value)
    if isinstance(value, QLaurent):
        return render_q(value)
    return str(value)


def run_identity(name: str, nmax: int, mmax: int | None = None) -> VerifyReport:
    ident = lookup(name)
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    ranges = {ident.index: (ident.start, nmax)}
    args = [range(ident.start, nmax + 1)]
    if ident.second is not None:
        if mmax is None:
            raise ValueError(f"identity {name!r} has two indices and needs mmax")
        ranges[ident.second] = (ident.second_start, mmax)
        args.append(range(ident.second_start, mmax + 1))
    t0 = time.perf_counter()
    bad = None
    indices: dict = {}
    try:
        for indices, lhs, rhs in ident.check(*args):
            if lhs != rhs:
                bad = Counterexample(dict(indices), _show(lhs), _show(rhs))
                break
    except (ArithmeticError, ValueError) as exc:
        # a side that cannot even be computed counts as a mismatch
        bad = Counterexample({"after": dict(indices)}, f"{type(exc).__name__}: {exc}", "")
    elapsed = (time.perf_counter() - t0) * 1000
    return VerifyReport(ident.name, ident.equation, ranges, bad is None, bad, elapsed)


def run_all(nmax: int = 20, mmax: int = 8, jobs: int = 1) -> list[VerifyReport]:
    """Every registered identity with its default range clipped to nmax."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")

    def one(ident: Identity) -> VerifyReport:
        top = max(min(nmax, ident.default_n), ident.start)
        return run_identity(ident.name, top, mmax if ident.second else None)

    idents = list(REGISTRY.values())
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, idents))
    return [one(i) for i in idents]
