import json
from itertools import product

import pytest

from qfib.families import FamilyId, family
from qfib.morse import (
    Linear,
    MorseSeq,
    Wrapped,
    enumerate_morse,
    enumerate_periodic,
    oracle,
    periodic_weight,
    weight,
    write_fixtures,
)
from qfib.qcombinat import q_binomial
from qfib.qring import S, X, XsPoly, eval_point, render, subst_scale

from conftest import P

F = FamilyId


def brute_force(n):
    """Every dot/dash word with total length n, found by filtering all words."""
    words = []
    for m in range(n + 1):
        for w in product(".-", repeat=m):
            if m + w.count("-") == n:
                words.append("".join(w))
    return sorted(words)


def test_enumerate_examples():
    assert [c.symbols for c in enumerate_morse(0)] == [""]
    assert [c.symbols for c in enumerate_morse(4)] == ["....", "..-", ".-.", "-..", "--"]
    assert len(enumerate_morse(20)) == 10946
    with pytest.raises(ValueError):
        enumerate_morse(-1)


@pytest.mark.parametrize("n", range(0, 13))
def test_enumerate_is_exhaustive_and_ordered(n):
    words = [c.symbols for c in enumerate_morse(n)]
    assert sorted(words) == brute_force(n)
    assert len(set(words)) == len(words)
    assert all(c.length == n for c in enumerate_morse(n))


def test_lexicographic_dot_before_dash():
    words = [c.symbols.replace(".", "a").replace("-", "b") for c in enumerate_morse(9)]
    assert words == sorted(words)


def test_morse_seq_fields():
    c = MorseSeq(".-.-")
    assert c.length == 6
    assert c.dash_positions == (2, 4)
    with pytest.raises(ValueError):
        MorseSeq(".x")


@pytest.mark.parametrize("kind", ["w", "v", "W"])
def test_weight_without_dashes(kind):
    assert weight(MorseSeq(".."), kind) == P("x^2")


@pytest.mark.parametrize(
    "symbols, kind, expected",
    [
        ("--", "v", "q^4*s^2"),
        ("--", "w", "s^2"),
        (".-", "W", "q^2*s*x"),
        ("-.", "W", "q*s*x"),
        ("-.", "v", "q*s*x"),
        (".-", "v", "q^2*s*x"),
    ],
)
def test_weight_examples(symbols, kind, expected):
    assert weight(MorseSeq(symbols), kind) == P(expected)


def test_weight_unknown_kind():
    with pytest.raises(ValueError):
        weight(MorseSeq("."), "z")


def test_oracle_examples():
    assert oracle("periodic_count", 6) == P("18")
    assert oracle("v_sum", 3) == P("x^3 + (q+q^2)*s*x")
    assert oracle("W_sum", 5) == family(F.Fib, 5) == P("x^4 + (q+q^2+q^3)*s*x^2 + q^3*s^2")
    assert oracle("W_sum", 0) == P("0")
    with pytest.raises(ValueError):
        oracle("nope", 2)


@pytest.mark.parametrize("n", range(0, 21))
def test_count_is_fibonacci(n):
    assert oracle("count", n).constant().at_one() == eval_point(family(F.f_xs, n), 1, 1, 1)


@pytest.mark.parametrize("n", range(0, 19))
def test_w_sum(n):
    assert oracle("w_sum", n) == family(F.f_xs, n)


@pytest.mark.parametrize("n", range(0, 17))
def test_v_sum(n):
    assert oracle("v_sum", n) == family(F.f_carlitz, n)


@pytest.mark.parametrize("n", range(0, 18))
def test_W_sum(n):
    assert oracle("W_sum", n) == family(F.Fib, n)


@pytest.mark.parametrize("n", range(2, 17))
def test_periodic(n):
    covers = enumerate_periodic(n)
    assert len(covers) == oracle("periodic_count", n).constant().at_one()
    assert oracle("periodic_count", n) == family(F.lucas_num, n)
    expect = family(F.f_xs, n) + S * family(F.f_xs, n - 2)
    assert oracle("periodic_w", n) == expect == family(F.l_xs, n)


def test_periodic_partition():
    covers = enumerate_periodic(5)
    assert sum(isinstance(c, Linear) for c in covers) == 8
    assert sum(isinstance(c, Wrapped) for c in covers) == 3
    assert periodic_weight(Wrapped(MorseSeq(".-"))) == P("s^2*x")


@pytest.mark.parametrize("n", range(2, 15))
def test_first_element_split(n):
    dots = [c for c in enumerate_morse(n) if c.symbols.startswith(".")]
    dashes = [c for c in enumerate_morse(n) if c.symbols.startswith("-")]
    total = lambda cs: sum((weight(c, "v") for c in cs), XsPoly())
    prev1 = total(enumerate_morse(n - 1))
    prev2 = total(enumerate_morse(n - 2))
    assert total(dots) == X * subst_scale(prev1, "s", 1)
    assert total(dashes) == P("q*s") * subst_scale(prev2, "s", 2)
    assert total(dots) + total(dashes) == total(enumerate_morse(n))


@pytest.mark.parametrize("n", range(0, 9))
def test_doubling_split(n):
    # group length-2n sequences by the dash count k among their last n symbols
    groups: dict[int, XsPoly] = {}
    for c in enumerate_morse(2 * n):
        k = c.symbols[len(c.symbols) - n:].count("-") if n else 0
        groups[k] = groups.get(k, XsPoly()) + weight(c, "v")
    for k in range(n + 1):
        term = XsPoly.monomial(n - k, k, q_binomial(n, k).shift(k * n)) * family(F.f_carlitz, n - k)
        assert groups.get(k, XsPoly()) == term


def test_fixtures(tmp_path):
    out = tmp_path / "m4.jsonl"
    assert write_fixtures(4, out) == 5
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["symbols"] for r in records] == ["....", "..-", ".-.", "-..", "--"]
    last = records[-1]
    assert last == {
        "symbols": "--",
        "length": 4,
        "dash_positions": [1, 2],
        "w": "s^2",
        "v": "q^4*s^2",
        "W": "q^3*s^2",
    }
    assert all(r["w"] == render(weight(MorseSeq(r["symbols"]), "w")) for r in records)
