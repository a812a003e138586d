"""Morse sequences (dots of length 1, dashes of length 2) and their weights.

This is the combinatorial oracle: sums of weights over all sequences of a
given length reproduce the polynomial families without using any of their
formulas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union

from .qring import ONE, XsPoly, render

DOT = "."
DASH = "-"


@dataclass(frozen=True)
class MorseSeq:
    symbols: str

    def __post_init__(self):
        if set(self.symbols) - {DOT, DASH}:
            raise ValueError(f"not a Morse sequence: {self.symbols!r}")

    @property
    def length(self) -> int:
        return len(self.symbols) + self.symbols.count(DASH)

    @cached_property
    def dash_positions(self) -> tuple[int, ...]:
        """1-based element indices of the dashes."""
        return tuple(i for i, c in enumerate(self.symbols, 1) if c == DASH)

    def __str__(self) -> str:
        return self.symbols


@dataclass(frozen=True)
class Linear:
    cover: MorseSeq


@dataclass(frozen=True)
class Wrapped:
    """Period-n covering whose first unit is the back half of a dash."""
    inner: MorseSeq


PeriodicCover = Union[Linear, Wrapped]


def _words(n: int) -> Iterator[str]:
    if n == 0:
        yield ""
        return
    for rest in _words(n - 1):
        yield DOT + rest
    if n >= 2:
        for rest in _words(n - 2):
            yield DASH + rest


def enumerate_morse(n: int) -> list[MorseSeq]:
    """All sequences of length n, lexicographic with dot < dash."""
    if n < 0:
        raise ValueError("length must be >= 0")
    return [MorseSeq(w) for w in _words(n)]


def enumerate_periodic(n: int) -> list[PeriodicCover]:
    if n < 0:
        raise ValueError("period must be >= 0")
    covers: list[PeriodicCover] = [Linear(c) for c in enumerate_morse(n)]
    if n >= 2:
        covers += [Wrapped(c) for c in enumerate_morse(n - 2)]
    return covers


def weight(c: MorseSeq, kind: str) -> XsPoly:
    dots = c.symbols.count(DOT)
    dashes = c.symbols.count(DASH)
    if kind == "w":
        return XsPoly.monomial(dots, dashes)
    if kind == "v":
        # the back half of a dash starting at offset p covers [p+1, p+2]
        qexp, pos = 0, 0
        for sym in c.symbols:
            if sym == DASH:
                qexp += pos + 1
                pos += 2
            else:
                pos += 1
        return XsPoly({(dots, dashes, qexp): 1})
    if kind == "W":
        return XsPoly({(dots, dashes, sum(c.dash_positions)): 1})
    raise ValueError(f"unknown weight {kind!r}; expected w, v or W")


def periodic_weight(cover: PeriodicCover) -> XsPoly:
    if isinstance(cover, Linear):
        return weight(cover.cover, "w")
    return XsPoly.monomial(0, 1) * weight(cover.inner, "w")


ORACLE_KINDS = ("count", "w_sum", "v_sum", "W_sum", "periodic_count", "periodic_w")


def oracle(kind: str, n: int) -> XsPoly:
    if kind == "count":
        return XsPoly.const(len(enumerate_morse(n)))
    if kind == "periodic_count":
        return XsPoly.const(len(enumerate_periodic(n)))
    if kind == "periodic_w":
        if n == 0:
            return ONE
        return sum((periodic_weight(c) for c in enumerate_periodic(n)), XsPoly())
    if kind in ("w_sum", "v_sum"):
        w = kind[0]
        return sum((weight(c, w) for c in enumerate_morse(n)), XsPoly())
    if kind == "W_sum":
        if n == 0:
            return XsPoly()
        return sum((weight(c, "W") for c in enumerate_morse(n - 1)), XsPoly())
    raise ValueError(f"unknown oracle {kind!r}; expected one of {', '.join(ORACLE_KINDS)}")


def fixture_record(c: MorseSeq) -> dict:
    return {
        "symbols": c.symbols,
        "length": c.length,
        "dash_positions": list(c.dash_positions),
        "w": render(weight(c, "w")),
        "v": render(weight(c, "v")),
        "W": render(weight(c, "W")),
    }


def write_fixtures(n: int, path) -> int:
    """Write one JSON line per sequence of length n; return the count."""
    seqs = enumerate_morse(n)
    with open(path, "w", encoding="utf-8") as fh:
        for c in seqs:
            fh.write(json.dumps(fixture_record(c)) + "\n")
    return len(seqs)
