from itertools import combinations
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qfib import qcombinat
from qfib.qcombinat import gauss_coeff, q_binomial, q_factorial, q_int, rothe_sides, subset_qsum
from qfib.qring import QLaurent, exact_div

from conftest import P, Qp

q = sympy.symbols("q")


def sympy_qbinomial(n, k):
    """[n, k]_q from the product formula, reduced by sympy."""
    num = sympy.Mul(*[1 - q ** (n - i) for i in range(k)])
    den = sympy.Mul(*[1 - q ** (i + 1) for i in range(k)])
    return sympy.Poly(sympy.cancel(num / den), q)


def from_sympy_poly(poly) -> QLaurent:
    return QLaurent({m[0]: int(c) for m, c in poly.terms()})


@pytest.mark.parametrize("n, expected", [(0, "0"), (1, "1"), (2, "1+q"), (4, "1+q+q^2+q^3")])
def test_q_int(n, expected):
    assert q_int(n) == Qp(expected)


def test_q_int_rejects_negative():
    with pytest.raises(ValueError):
        q_int(-1)


@pytest.mark.parametrize(
    "n, k, expected",
    [(5, 0, "1"), (2, 1, "1+q"), (4, 2, "1+q+2*q^2+q^3+q^4"), (3, 5, "0"), (3, -1, "0"), (-2, 0, "0")],
)
def test_q_binomial_examples(n, k, expected):
    assert q_binomial(n, k) == Qp(expected)


@pytest.mark.parametrize("n", range(0, 13))
def test_q_binomial_against_product_formula(n):
    for k in range(n + 1):
        assert q_binomial(n, k) == from_sympy_poly(sympy_qbinomial(n, k))


def test_q_binomial_via_subset_sum():
    assert q_binomial(4, 2) == exact_div(subset_qsum(4, 2), Qp("q^3"))


def test_factorial_quotient():
    for n in range(9):
        for k in range(n + 1):
            assert q_binomial(n, k) == exact_div(q_factorial(n), q_factorial(k) * q_factorial(n - k))


@given(st.integers(0, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_symmetry_and_q_one(nk):
    n, k = nk
    assert q_binomial(n, k) == q_binomial(n, n - k)
    assert q_binomial(n, k).at_one() == comb(n, k)


@pytest.mark.parametrize("n", range(0, 30))
def test_both_pascal_rules(n):
    for k in range(0, n + 2):
        left = q_binomial(n + 1, k)
        assert left == q_binomial(n, k - 1) + q_binomial(n, k).shift(k)
        assert left == q_binomial(n, k - 1).shift(n + 1 - k) + q_binomial(n, k)


def test_memo_matches_fresh_table(monkeypatch):
    cached = [q_binomial(20, k) for k in range(21)]
    monkeypatch.setattr(qcombinat, "_rows", [(QLaurent.const(1),)])
    assert [q_binomial(20, k) for k in range(21)] == cached


def test_rothe_examples():
    assert rothe_sides(0) == (P("1"), P("1"))
    left, right = rothe_sides(2)
    assert left == right == P("y^2 + (1+q)*x*y + q*x^2")


@pytest.mark.parametrize("n", range(0, 21))
def test_rothe_sides_agree(n):
    left, right = rothe_sides(n)
    assert left == right


@pytest.mark.parametrize(
    "n, k, expected", [(4, 0, "1"), (3, 2, "q^3+q^4+q^5"), (6, 3, None)]
)
def test_subset_qsum_examples(n, k, expected):
    value = subset_qsum(n, k)
    if expected is None:
        assert value == q_binomial(6, 3).shift(6)
    else:
        assert value == Qp(expected)


@pytest.mark.parametrize("n", range(0, 13))
def test_subset_qsum_exhaustive(n):
    for k in range(n + 1):
        assert subset_qsum(n, k) == q_binomial(n, k).shift(comb(k + 1, 2))


def test_subset_qsum_domain():
    with pytest.raises(ValueError):
        subset_qsum(2, 3)


def test_gauss_coeff_examples():
    assert all(c == 1 for c in gauss_coeff(0, 10))
    assert gauss_coeff(1, 2)[2] == Qp("1+q+q^2")
    assert gauss_coeff(2, 2)[2] == Qp("1+q+2*q^2+q^3+q^4")


@pytest.mark.parametrize("k", range(0, 7))
def test_gauss_coeff_is_binomial(k):
    coeffs = gauss_coeff(k, 20)
    assert len(coeffs) == 21
    for n, c in enumerate(coeffs):
        assert c == q_binomial(n + k, n)


def test_gauss_coeff_by_brute_force():
    # coefficient of x^n counts multisets of size n from {0..k}, weighted by q^sum
    k, order = 3, 6
    for n, c in enumerate(gauss_coeff(k, order)):
        counts = {}
        for combo in combinations(range(n + k), n):
            e = sum(v - i for i, v in enumerate(combo))  # stars and bars back to a multiset
            counts[e] = counts.get(e, 0) + 1
        assert c == QLaurent(counts)
