"""Truncated power series in z with XsPoly coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .qring import ONE, QLaurent, S, X, XsPoly, q_power


class NonUnitConstant(ArithmeticError):
    pass


@dataclass(frozen=True)
class ZSeries:
    order: int
    coeffs: tuple[XsPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need exactly order + 1 coefficients")

    @classmethod
    def of(cls, coeffs: Sequence, order: int) -> ZSeries:
        """Series from the leading coefficients of a z-polynomial, truncated or padded."""
        cs = [XsPoly._coerce(c) for c in coeffs[: order + 1]]
        cs += [XsPoly()] * (order + 1 - len(cs))
        return cls(order, tuple(cs))

    def __getitem__(self, n: int) -> XsPoly:
        return self.coeffs[n]

    def _common(self, other: ZSeries) -> int:
        return min(self.order, other.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZSeries):
            return NotImplemented
        n = self._common(other)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def __add__(self, other: ZSeries) -> ZSeries:
        n = self._common(other)
        return ZSeries(n, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    def __neg__(self) -> ZSeries:
        return ZSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: ZSeries) -> ZSeries:
        return self + (-other)

    def __mul__(self, other) -> ZSeries:
        if not isinstance(other, ZSeries):
            c = XsPoly._coerce(other)
            return ZSeries(self.order, tuple(a * c for a in self.coeffs))
        n = self._common(other)
        out = []
        for k in range(n + 1):
            acc = XsPoly()
            for i in range(k + 1):
                a = self.coeffs[i]
                if a:
                    acc = acc + a * other.coeffs[k - i]
            out.append(acc)
        return ZSeries(n, tuple(out))

    def reciprocal(self) -> ZSeries:
        c0 = self.coeffs[0]
        if not (c0.is_constant() and c0.constant().is_unit()):
            raise NonUnitConstant(f"constant coefficient {c0} is not a unit")
        inv = XsPoly.const(c0.constant() ** -1)
        out = [inv]
        for k in range(1, self.order + 1):
            acc = XsPoly()
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv))
        return ZSeries(self.order, tuple(out))


def series_op(a: ZSeries, b: ZSeries | None, kind: str) -> ZSeries:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "reciprocal":
        return a.reciprocal()
    raise ValueError(f"unknown kind {kind!r}; expected add, mul or reciprocal")


GF_IDS = ("fib_num", "lucas_num", "f_xs", "L_xs", "f_carlitz", "fib")


def _qsum_gf(order: int, exponent) -> ZSeries:
    """sum_k q^exponent(k) s^k z^2k / prod_{i<=k} (1 - q^i x z)."""
    total = ZSeries.of([], order)
    denom = ZSeries.of([ONE], order)
    for k in range(order // 2 + 1):
        denom = denom * ZSeries.of([ONE, -X * q_power(k)], order)
        numer = ZSeries.of([XsPoly()] * (2 * k) + [XsPoly.monomial(0, k, q_power(exponent(k)))], order)
        total = total + numer * denom.reciprocal()
    return total


def gf(gid: str, order: int) -> ZSeries:
    """Truncated expansion of the closed-form generating function ``gid``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if gid == "fib_num":
        return ZSeries.of([1, -1, -1], order).reciprocal()
    if gid == "lucas_num":
        return ZSeries.of([2, -1], order) * ZSeries.of([1, -1, -1], order).reciprocal()
    if gid == "f_xs":
        return ZSeries.of([ONE, -X, -S], order).reciprocal()
    if gid == "L_xs":
        return ZSeries.of([2 * ONE, -X], order) * ZSeries.of([ONE, -X, -S], order).reciprocal()
    if gid == "f_carlitz":
        return _qsum_gf(order, lambda k: k * k)
    if gid == "fib":
        return _qsum_gf(order, lambda k: k * (k + 1) // 2)
    raise ValueError(f"unknown generating function {gid!r}; expected one of {', '.join(GF_IDS)}")


# family matched by coefficient n of each generating function
GF_TARGETS = {
    "fib_num": ("fib_num", 1),
    "lucas_num": ("lucas_num", 0),
    "f_xs": ("f_xs", 0),
    "L_xs": ("L_xs", 0),
    "f_carlitz": ("f_carlitz", 0),
    "fib": ("fib", 0),
}


def gf_summand(k: int, order: int, exponent: int) -> ZSeries:
    """One summand q^exponent s^k z^2k / prod_{i<=k} (1 - q^i x z)."""
    denom = ZSeries.of([ONE], order)
    for i in range(k + 1):
        denom = denom * ZSeries.of([ONE, -X * q_power(i)], order)
    numer = ZSeries.of([XsPoly()] * (2 * k) + [XsPoly.monomial(0, k, QLaurent({exponent: 1}))], order)
    return numer * denom.reciprocal()
