from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfib.families import FamilyId, family
from qfib.operators import (
    A,
    DQ,
    EPS,
    IDENTITY,
    MUL_S,
    MUL_X,
    a_powers,
    eps_q,
    moment,
    phi_map,
    q_derivative,
    rs_operator,
    scale,
    t_s_transform,
)
from qfib.qcombinat import q_binomial, q_int
from qfib.qring import ONE, S, X, XsPoly, compose, q_power, subst_scale

from conftest import P, xspolys

F = FamilyId


def test_q_derivative_examples():
    assert q_derivative(ONE) == P("0")
    assert q_derivative(P("x^3")) == P("(1+q+q^2)*x^2")
    assert q_derivative(P("s^2*x")) == P("s^2")
    assert q_derivative(family(F.RS, 3)) == family(F.RS, 2) * q_int(3)


@pytest.mark.parametrize("n", range(1, 15))
def test_q_derivative_of_rogers_szego(n):
    assert q_derivative(family(F.RS, n)) == family(F.RS, n - 1) * q_int(n)


@given(xspolys, xspolys)
def test_q_leibniz(p, r):
    assert q_derivative(p * r) == eps_q(p) * q_derivative(r) + q_derivative(p) * r


@given(xspolys, xspolys, st.integers(-3, 3), st.integers(-3, 3))
def test_linearity(p, r, a, b):
    for op in (DQ, EPS, A, MUL_X * DQ + MUL_S):
        assert op(p * a + r * b) == op(p) * a + op(r) * b


def test_eps_is_one_plus_q_minus_one_x_dq():
    other = IDENTITY + scale(q_power(1) - 1) * MUL_X * DQ
    for n in range(21):
        for k in range(6):
            mono = XsPoly.monomial(n, k)
            assert EPS(mono) == other(mono)


def test_operator_algebra():
    assert (MUL_X**3)(ONE) == P("x^3")
    assert (MUL_X - MUL_X)(P("x + s")) == P("0")
    assert (MUL_X * MUL_S)(ONE) == P("x*s")


def test_t_s_examples():
    assert t_s_transform(ONE) == ONE
    assert t_s_transform(X) == X
    assert t_s_transform(P("x^2")) == P("x^2 + (q-1)*s")
    assert t_s_transform(P("x^2 + s")) == P("x^2 + q*s") == family(F.Fib, 3)
    assert a_powers(2)[2] == A(A(ONE))


@pytest.mark.parametrize("n", range(0, 21))
def test_t_s_maps_classical_to_q(n):
    assert t_s_transform(family(F.F_xs, n)) == family(F.Fib, n)
    assert t_s_transform(family(F.L_xs, n)) == family(F.Luc, n)


def test_rs_operator_examples():
    assert rs_operator(0) == ONE
    assert rs_operator(2) == P("x^2 + (1+q)*x*y + y^2")


@pytest.mark.parametrize("n", range(0, 12))
def test_rs_operator_matches_family(n):
    assert rs_operator(n) == family(F.RS, n)


def test_phi_examples():
    assert phi_map(P("x^5")) == P("x^5")
    assert phi_map(family(F.fib, 4)) == family(F.f_carlitz, 4)
    # s^2 fib_2 goes to q s^2 f_2(x, q^2 s)
    lhs = phi_map(S**2 * family(F.fib, 2))
    rhs = P("q*s^2") * subst_scale(family(F.f_carlitz, 2), "s", 2)
    assert lhs == rhs
    with pytest.raises(ValueError):
        phi_map(ONE, "sideways")


@given(xspolys)
def test_phi_inverse(p):
    assert phi_map(phi_map(p, "forward"), "inverse") == p
    assert phi_map(phi_map(p, "inverse"), "forward") == p


@pytest.mark.parametrize("n", range(0, 21))
def test_phi_carries_fib_to_carlitz(n):
    assert phi_map(family(F.fib, n)) == family(F.f_carlitz, n)


@pytest.mark.parametrize(
    "fid, n, expected",
    [
        (F.luc, 2, "-(1+q)*s"),
        (F.fib, 2, "-q*s"),
        (F.f_xs, 4, "2*s^2"),
        (F.l_xs, 3, "0"),
        (F.f_xs, 0, "1"),
    ],
)
def test_moment_examples(fid, n, expected):
    assert moment(fid, n) == P(expected)


def test_moment_rejects_other_families():
    with pytest.raises(ValueError):
        moment(F.Fib, 2)


@pytest.mark.parametrize("n", range(0, 13))
def test_moment_formulas(n):
    catalan = comb(2 * n, n) // (n + 1)
    sgn = (-1) ** n
    assert moment(F.f_xs, 2 * n) == XsPoly.monomial(0, n, sgn * catalan)
    assert moment(F.l_xs, 2 * n) == XsPoly.monomial(0, n, sgn * comb(2 * n, n))
    assert moment(F.luc, 2 * n) == XsPoly.monomial(0, n, q_binomial(2 * n, n) * sgn)
    assert not moment(F.fib, 2 * n + 1)


@pytest.mark.parametrize("n", range(0, 17))
def test_h_through_operator_gives_power(n):
    # substitute x -> A in H_n (s central) and apply to 1
    assert t_s_transform(family(F.H, n)) == X**n


@pytest.mark.parametrize("n", range(0, 15))
def test_h_composed_is_rogers_szego(n):
    assert compose(family(F.H, n), X + S, -X * S) == family(F.RS, n)


@pytest.mark.parametrize("n", range(0, 21))
def test_inversion_classical(n):
    f_side = sum(
        (XsPoly.monomial(0, k, (-1) ** k * (comb(n, k) - comb(n, k - 1) if k else 1)) * family(F.f_xs, n - 2 * k)
         for k in range(n // 2 + 1)),
        XsPoly(),
    )
    assert f_side == X**n
