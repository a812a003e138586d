"""Linear operators on XsPoly: D_q, the dilation eps_q, A = x + (q-1) s D_q.

Operators are applied eagerly; :class:`Operator` only wraps a callable so
sums, products (composition) and powers read like the algebra they encode.
"""

from __future__ import annotations

from math import comb
from typing import Callable

from .families import FamilyId, as_family_id, family
from .qcombinat import q_int
from .qring import ONE, QLaurent, S, X, XsPoly, monic_basis_expand, q_power, subst_scale


class Operator:
    def __init__(self, fn: Callable[[XsPoly], XsPoly], name: str = "op"):
        self.fn = fn
        self.name = name

    def __call__(self, p) -> XsPoly:
        return self.fn(XsPoly._coerce(p))

    def __add__(self, other: Operator) -> Operator:
        return Operator(lambda p: self(p) + other(p), f"({self.name} + {other.name})")

    def __sub__(self, other: Operator) -> Operator:
        return Operator(lambda p: self(p) - other(p), f"({self.name} - {other.name})")

    def __mul__(self, other: Operator) -> Operator:
        """Composition: (self * other)(p) = self(other(p))."""
        return Operator(lambda p: self(other(p)), f"{self.name}{other.name}")

    def __pow__(self, n: int) -> Operator:
        def run(p):
            for _ in range(n):
                p = self(p)
            return p

        return Operator(run, f"{self.name}^{n}")

    def __repr__(self) -> str:
        return f"Operator({self.name})"


def scale(c: QLaurent | int) -> Operator:
    return Operator(lambda p: p * c, str(c))


def q_derivative(p: XsPoly) -> XsPoly:
    """D_q x^n = [n]_q x^(n-1); s is left alone."""
    out = XsPoly()
    for (i, j), coef in p.terms.items():
        if i:
            out = out + XsPoly.monomial(i - 1, j, coef * q_int(i))
    return out


def eps_q(p: XsPoly) -> XsPoly:
    """p(x) -> p(qx)."""
    return subst_scale(p, "x", 1)


MUL_X = Operator(lambda p: X * p, "x")
MUL_S = Operator(lambda p: S * p, "s")
DQ = Operator(q_derivative, "D")
EPS = Operator(eps_q, "E")
IDENTITY = Operator(lambda p: p, "1")

# x + (q - 1) s D_q
A = MUL_X + scale(q_power(1) - 1) * MUL_S * DQ


def a_powers(top: int) -> list[XsPoly]:
    """[A^0 1, A^1 1, ..., A^top 1]."""
    out = [ONE]
    for _ in range(top):
        out.append(A(out[-1]))
    return out


def t_s_transform(P: XsPoly) -> XsPoly:
    """Linear map x^n s^k -> s^k A^n(1), with s and q central.

    Equivalently: evaluate P with x replaced by the operator A, then apply
    the result to the constant 1.
    """
    powers = a_powers(max(P.deg_x(), 0))
    out = XsPoly()
    for (i, j), coef in P.terms.items():
        out = out + powers[i] * XsPoly.monomial(0, j, coef)
    return out


def rs_operator(n: int) -> XsPoly:
    """(x + y eps_q)^n applied to 1, y in the s-slot."""
    return ((MUL_X + MUL_S * EPS) ** n)(ONE)


def phi_map(p: XsPoly, direction: str = "forward") -> XsPoly:
    """Multiply the x^n s^k coefficient by q^(+-C(k, 2))."""
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown direction {direction!r}; expected forward or inverse")
    sign = 1 if direction == "forward" else -1
    return p.map_exponents(lambda i, k, e: (i, k, e + sign * comb(k, 2)))


MOMENT_FAMILIES = {
    "f_xs": FamilyId.f_xs,
    "l_xs": FamilyId.l_xs,
    "fib": FamilyId.fib,
    "luc": FamilyId.luc,
}


def moment(fid, n: int) -> XsPoly:
    """Lambda(x^n) for the functional with Lambda(p_k) = [k = 0]."""
    fid = as_family_id(fid)
    if fid.value not in MOMENT_FAMILIES:
        raise ValueError(f"moments are defined for {', '.join(MOMENT_FAMILIES)}, not {fid}")
    basis = [family(fid, k) for k in range(n + 1)]
    return monic_basis_expand(XsPoly.monomial(n, 0), basis)[0]
