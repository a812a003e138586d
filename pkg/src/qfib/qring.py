"""Exact arithmetic over Z[q, 1/q][x, s].

``QLaurent`` is a Laurent polynomial in ``q`` with integer coefficients and
``XsPoly`` a sparse polynomial in ``x`` and ``s`` whose coefficients are
``QLaurent`` values.  Both are immutable and kept in canonical form (no zero
coefficients are ever stored), so structural equality is ring equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class NotDivisible(ArithmeticError):
    """Raised when an exact Laurent division leaves a remainder."""


class ZeroBase(ZeroDivisionError):
    """Raised when q = 0 is substituted into a negative power of q."""


class QLaurent:
    """Laurent polynomial in q with arbitrary-precision integer coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._t = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> QLaurent:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> QLaurent:
        return cls({e: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def is_unit(self) -> bool:
        """True for +-q^k, the units of Z[q, 1/q]."""
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    @staticmethod
    def _coerce(other) -> QLaurent:
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, int):
            return QLaurent({0: other})
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __add__(self, other) -> QLaurent:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._t)
        for e, c in other._t.items():
            out[e] = out.get(e, 0) + c
        return QLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> QLaurent:
        return QLaurent({e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> QLaurent:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QLaurent:
        return (-self) + other

    def __mul__(self, other) -> QLaurent:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QLaurent:
        if k < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not invertible")
            (e, c), = self._t.items()
            return QLaurent({e * k: c ** -k})
        result = QLaurent({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> QLaurent:
        """Multiply by q^k."""
        return QLaurent({e + k: c for e, c in self._t.items()})

    def evaluate(self, qv) -> Fraction:
        qv = Fraction(qv)
        total = Fraction(0)
        for e, c in self._t.items():
            if e < 0 and qv == 0:
                raise ZeroBase("q = 0 in a negative power of q")
            total += c * qv**e
        return total

    def at_one(self) -> int:
        return sum(self._t.values())

    def __repr__(self) -> str:
        return f"QLaurent({render_q(self)!r})"

    def __str__(self) -> str:
        return render_q(self)


Q = QLaurent({1: 1})


def q_power(e: int) -> QLaurent:
    return QLaurent({e: 1})


def exact_div(a: QLaurent, b: QLaurent) -> QLaurent:
    """Return c with b*c == a, or raise NotDivisible."""
    a, b = QLaurent._coerce(a), QLaurent._coerce(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if a.is_zero():
        return QLaurent()
    # strip the lowest powers of q so both become polynomials with a nonzero
    # constant term; the quotient is then a polynomial times q^(ma - mb)
    ma, mb = a.min_exp(), b.min_exp()
    num = [0] * (a.max_exp() - ma + 1)
    for e, c in a._t.items():
        num[e - ma] = c
    den = [0] * (b.max_exp() - mb + 1)
    for e, c in b._t.items():
        den[e - mb] = c
    dlen = len(den)
    if len(num) < dlen:
        raise NotDivisible(f"({a}) / ({b})")
    quot = [0] * (len(num) - dlen + 1)
    lead = den[-1]
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dlen - 1]
        if c % lead:
            raise NotDivisible(f"({a}) / ({b})")
        c //= lead
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise NotDivisible(f"({a}) / ({b})")
    return QLaurent({i + ma - mb: c for i, c in enumerate(quot)})


class XsPoly:
    """Sparse polynomial in x and s with QLaurent coefficients.

    Stored flat as ``{(deg_x, deg_s, deg_q): int}``; :attr:`terms` gives the
    grouped view ``{(deg_x, deg_s): QLaurent}``.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, flat: Mapping[tuple[int, int, int], int] | None = None):
        self._t = {k: c for k, c in (flat or {}).items() if c}
        if any(i < 0 or j < 0 for i, j, _ in self._t):
            raise ValueError("x and s exponents must be nonnegative")
        self._hash = None

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], QLaurent | int]) -> XsPoly:
        flat = {}
        for (i, j), coef in terms.items():
            if i < 0 or j < 0:
                raise ValueError("x and s degrees must be nonnegative")
            for e, c in QLaurent._coerce(coef)._t.items():
                flat[(i, j, e)] = c
        return cls(flat)

    @classmethod
    def monomial(cls, dx: int = 0, ds: int = 0, coef: QLaurent | int = 1) -> XsPoly:
        return cls.from_terms({(dx, ds): coef})

    @classmethod
    def const(cls, coef: QLaurent | int) -> XsPoly:
        return cls.from_terms({(0, 0): coef})

    @property
    def terms(self) -> dict[tuple[int, int], QLaurent]:
        grouped: dict[tuple[int, int], dict[int, int]] = {}
        for (i, j, e), c in self._t.items():
            grouped.setdefault((i, j), {})[e] = c
        return {k: QLaurent(v) for k, v in grouped.items()}

    def flat_items(self):
        return self._t.items()

    def coeff(self, dx: int, ds: int) -> QLaurent:
        return QLaurent({e: c for (i, j, e), c in self._t.items() if i == dx and j == ds})

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def deg_x(self) -> int:
        """Largest x-degree; -1 for the zero polynomial."""
        return max((i for i, _, _ in self._t), default=-1)

    def deg_s(self) -> int:
        return max((j for _, j, _ in self._t), default=-1)

    def is_constant(self) -> bool:
        return all(i == 0 and j == 0 for i, j, _ in self._t)

    def constant(self) -> QLaurent:
        """The coefficient of x^0 s^0."""
        return self.coeff(0, 0)

    def is_monic_in_x(self) -> bool:
        d = self.deg_x()
        return d >= 0 and self.x_coeff(d) == ONE

    def x_coeff(self, dx: int) -> XsPoly:
        """Coefficient of x^dx as a polynomial in s (and q)."""
        return XsPoly({(0, j, e): c for (i, j, e), c in self._t.items() if i == dx})

    @staticmethod
    def _coerce(other) -> XsPoly:
        if isinstance(other, XsPoly):
            return other
        if isinstance(other, (int, QLaurent)):
            return XsPoly.const(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __add__(self, other) -> XsPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._t)
        for k, c in other._t.items():
            out[k] = out.get(k, 0) + c
        return XsPoly(out)

    __radd__ = __add__

    def __neg__(self) -> XsPoly:
        return XsPoly({k: -c for k, c in self._t.items()})

    def __sub__(self, other) -> XsPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> XsPoly:
        return (-self) + other

    def __mul__(self, other) -> XsPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, int, int], int] = {}
        get = out.get
        for (i1, j1, e1), c1 in self._t.items():
            for (i2, j2, e2), c2 in other._t.items():
                k = (i1 + i2, j1 + j2, e1 + e2)
                out[k] = get(k, 0) + c1 * c2
        return XsPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> XsPoly:
        if k < 0:
            raise ValueError("negative power of an XsPoly")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_exponents(self, fn) -> XsPoly:
        """Rebuild with each key (i, j, e) replaced by fn(i, j, e)."""
        out: dict[tuple[int, int, int], int] = {}
        for k, c in self._t.items():
            nk = fn(*k)
            out[nk] = out.get(nk, 0) + c
        return XsPoly(out)

    def at_q_one(self) -> XsPoly:
        """Specialize q = 1."""
        return self.map_exponents(lambda i, j, e: (i, j, 0))

    def __repr__(self) -> str:
        return f"XsPoly({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


ZERO = XsPoly()
ONE = XsPoly.const(1)
X = XsPoly.monomial(1, 0)
S = XsPoly.monomial(0, 1)
QX = XsPoly.const(Q)


def poly_op(p: XsPoly, r: XsPoly, kind: str) -> XsPoly:
    if kind == "add":
        return p + r
    if kind == "sub":
        return p - r
    if kind == "mul":
        return p * r
    raise ValueError(f"unknown kind {kind!r}; expected add, sub or mul")


def subst_scale(p: XsPoly, var: str, j: int) -> XsPoly:
    """Replace ``var`` (``'x'`` or ``'s'``) by q^j * var."""
    if var == "x":
        return p.map_exponents(lambda i, k, e: (i, k, e + j * i))
    if var == "s":
        return p.map_exponents(lambda i, k, e: (i, k, e + j * k))
    raise ValueError(f"unknown variable {var!r}; expected 'x' or 's'")


def _powers(base: XsPoly, top: int) -> list[XsPoly]:
    out = [ONE]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def compose(P: XsPoly, A: XsPoly, B: XsPoly) -> XsPoly:
    """Substitute x := A and s := B into P."""
    A, B = XsPoly._coerce(A), XsPoly._coerce(B)
    apow = _powers(A, max(P.deg_x(), 0))
    bpow = _powers(B, max(P.deg_s(), 0))
    out = ZERO
    for (i, j), coef in P.terms.items():
        out = out + apow[i] * bpow[j] * coef
    return out


def eval_point(p: XsPoly, qv, xv, sv) -> Fraction:
    qv, xv, sv = Fraction(qv), Fraction(xv), Fraction(sv)
    total = Fraction(0)
    for (i, j, e), c in p.flat_items():
        if e < 0 and qv == 0:
            raise ZeroBase("q = 0 in a negative power of q")
        total += c * xv**i * sv**j * qv**e
    return total


def monic_basis_expand(p: XsPoly, basis: Sequence[XsPoly]) -> list[XsPoly]:
    """Coefficients c_k (free of x) with p == sum c_k * basis[k].

    ``basis[k]`` must be monic of x-degree k, and ``len(basis)`` must exceed
    the x-degree of p.
    """
    coeffs = [ZERO] * len(basis)
    rest = p
    for d in range(p.deg_x(), -1, -1):
        b = basis[d]
        if b.deg_x() != d or not b.is_monic_in_x():
            raise ValueError(f"basis element {d} is not monic of degree {d}")
        c = rest.x_coeff(d)
        if c:
            coeffs[d] = c
            rest = rest - c * b
    assert rest.is_zero()
    return coeffs


@dataclass(frozen=True)
class Mat2:
    a11: XsPoly
    a12: XsPoly
    a21: XsPoly
    a22: XsPoly

    @classmethod
    def of(cls, a11, a12, a21, a22) -> Mat2:
        c = XsPoly._coerce
        return cls(c(a11), c(a12), c(a21), c(a22))

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )

    def __pow__(self, n: int) -> Mat2:
        if n < 0:
            raise ValueError("negative matrix power")
        result = IDENTITY
        for _ in range(n):
            result = self @ result
        return result

    def det(self) -> XsPoly:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> XsPoly:
        return self.a11 + self.a22

    def map(self, fn) -> Mat2:
        return Mat2(fn(self.a11), fn(self.a12), fn(self.a21), fn(self.a22))

    def entries(self) -> tuple[XsPoly, XsPoly, XsPoly, XsPoly]:
        return (self.a11, self.a12, self.a21, self.a22)

    def __str__(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(*(render(e) for e in self.entries()))


IDENTITY = Mat2(ONE, ZERO, ZERO, ONE)


def mat2_ops(M: Mat2, N: Mat2 | None, kind: str):
    if kind == "mul":
        return M @ N
    if kind == "det":
        return M.det()
    if kind == "trace":
        return M.trace()
    raise ValueError(f"unknown kind {kind!r}; expected mul, det or trace")


# rendering ---------------------------------------------------------------

def _q_piece(e: int, c: int) -> str:
    """Unsigned text for |c| * q^e."""
    c = abs(c)
    if e == 0:
        return str(c)
    qp = "q" if e == 1 else f"q^{e}"
    return qp if c == 1 else f"{c}*{qp}"


def _join(pieces: Iterable[tuple[bool, str]]) -> str:
    out = []
    for neg, text in pieces:
        if not out:
            out.append("-" + text if neg else text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out) if out else "0"


def render_q(c: QLaurent) -> str:
    """Ascending powers of q, e.g. ``1 - q + 2*q^3``."""
    return _join((v < 0, _q_piece(e, v)) for e, v in c.items())


def _mono(i: int, j: int) -> str:
    parts = []
    if j:
        parts.append("s" if j == 1 else f"s^{j}")
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    return "*".join(parts)


def render(p: XsPoly) -> str:
    """Canonical text form of an XsPoly."""
    terms = p.terms
    keys = sorted(terms, key=lambda k: (-k[0], k[1]))
    pieces = []
    for i, j in keys:
        coef = terms[(i, j)]
        mono = _mono(i, j)
        if len(coef) == 1:
            (e, c), = coef.items()
            if mono:
                text = mono if (e == 0 and abs(c) == 1) else f"{_q_piece(e, c)}*{mono}"
            else:
                text = _q_piece(e, c)
            pieces.append((c < 0, text))
        else:
            inner = render_q(coef)
            if mono:
                pieces.append((False, f"({inner})*{mono}"))
            elif len(keys) == 1:
                return inner
            else:
                pieces.append((False, f"({inner})"))
    return _join(pieces)


# JSON term encoding --------------------------------------------------------

def to_json_terms(p: XsPoly) -> list[dict]:
    terms = p.terms
    out = []
    for i, j in sorted(terms, key=lambda k: (-k[0], k[1])):
        out.append({"x": i, "s": j, "q": [[e, str(c)] for e, c in terms[(i, j)].items()]})
    return out


def from_json_terms(data: list[dict]) -> XsPoly:
    flat = {}
    for t in data:
        for e, c in t["q"]:
            flat[(int(t["x"]), int(t["s"]), int(e))] = int(c)
    return XsPoly(flat)
