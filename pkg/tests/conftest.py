"""Shared helpers: a sympy-backed parser used as an independent oracle, and
hypothesis strategies for random ring elements."""

from __future__ import annotations

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qfib.qring import Mat2, QLaurent, XsPoly

settings.register_profile(
    "qfib", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("qfib")

_q, _x, _s, _y = sympy.symbols("q x s y")


def P(text: str) -> XsPoly:
    """Parse a hand-written polynomial in q, x, s (y is an alias for s).

    sympy does the expansion, so values written in factored textbook form
    are turned into canonical XsPoly without touching qfib arithmetic.
    """
    expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals={"q": _q, "x": _x, "s": _s, "y": _s}))
    flat: dict[tuple[int, int, int], int] = {}
    for mono, coef in expr.as_coefficients_dict().items():
        powers = mono.as_powers_dict()
        key = (int(powers.get(_x, 0)), int(powers.get(_s, 0)), int(powers.get(_q, 0)))
        assert coef == int(coef), text
        flat[key] = flat.get(key, 0) + int(coef)
    return XsPoly(flat)


def Qp(text: str) -> QLaurent:
    p = P(text)
    assert p.is_constant() or not p
    return p.constant()


def to_sympy(p: XsPoly):
    return sum(
        (c * _q**e * _x**i * _s**j for (i, j, e), c in p.flat_items()), sympy.Integer(0)
    )


small_int = st.integers(-5, 5).filter(bool)

qlaurents = st.dictionaries(st.integers(-4, 6), small_int, max_size=5).map(QLaurent)

xspolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 4)), small_int, max_size=6
).map(XsPoly)

mat2s = st.builds(Mat2, xspolys, xspolys, xspolys, xspolys)

points = st.tuples(
    st.integers(-4, 4).filter(bool), st.integers(-4, 4), st.integers(-4, 4)
)
