"""Shared fixtures: the seven standard quivers and the parameter grid.

The grid gives twelve deterministic (q, theta) pairs per quiver, spanning
torsion denominators up to 4, up to two free generators, and stability
weights bounded by 2.  The exhaustive suites run every quiver against every
grid point and every small dimension vector.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

import pytest

from qresolve import GroupElt, MultParam, Quiver

F = Fraction

JORDAN = Quiver(1, ((0, 0),))
A2 = Quiver(2, ((0, 1),))
A3 = Quiver(3, ((0, 1), (1, 2)))
D4_STAR = Quiver(5, ((0, 1), (0, 2), (0, 3), (0, 4)))
D4_FRAMED = Quiver(6, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 5)))
STAR5 = Quiver(6, ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5)))
CRAB21 = Quiver(2, ((0, 0), (0, 1)))
TWO_LOOPS = Quiver(1, ((0, 0), (0, 0)))

FIXTURE_QUIVERS = {
    "jordan": JORDAN,
    "a2": A2,
    "a3": A3,
    "d4-star": D4_STAR,
    "d4-framed": D4_FRAMED,
    "star5": STAR5,
    "crab21": CRAB21,
}


def ge(torsion, free=(), rank=0) -> GroupElt:
    padded = tuple(free) + (0,) * (rank - len(free))
    return GroupElt(F(torsion), padded)


def _param(n: int, torsions=(), frees=None, rank=0) -> MultParam:
    values = []
    for i in range(n):
        t = torsions[i] if i < len(torsions) else 0
        f = frees[i] if frees and i < len(frees) else ()
        values.append(ge(t, f, rank))
    return MultParam(tuple(values), rank)


def parameter_grid(n: int) -> list[tuple[MultParam, tuple[int, ...]]]:
    """Twelve deterministic (q, theta) pairs for an n-vertex quiver."""
    zero = (0,) * n

    def theta(*entries) -> tuple[int, ...]:
        out = list(entries[:n]) + [0] * max(0, n - len(entries))
        return tuple(out)

    grid = [
        (_param(n), zero),
        (_param(n), theta(1, -1)),
        (_param(n), theta(2, -1, -1) if n >= 3 else theta(2, -2)),
        (_param(n, (F(1, 2),)), zero),
        (_param(n, (F(1, 2), F(1, 2))), zero),
        (_param(n, (F(1, 3), F(2, 3))), zero),
        (_param(n, (F(1, 4), F(3, 4))), zero),
        (_param(n, frees=[(1,), (-1,)], rank=1), zero),
        (_param(n, frees=[(1,)], rank=1), zero),
        (
            _param(n, frees=[(1, 0), (-1, 0), (0, 1), (0, -1)], rank=2)
            if n >= 4
            else _param(n, frees=[(1, 1), (-1, -1)], rank=2),
            zero,
        ),
        (_param(n, (F(1, 2),), frees=[(1,), (-1,)], rank=1), zero),
        (_param(n, (F(1, 3),)), theta(1, *([0] * max(0, n - 2)), -1) if n >= 2 else zero),
    ]
    return grid


def small_vectors(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """All nonzero nonnegative vectors with entry sum at most ``total``."""

    def rec(i: int, left: int):
        if i == n - 1:
            for v in range(left + 1):
                yield (v,)
            return
        for v in range(left + 1):
            for rest in rec(i + 1, left - v):
                yield (v,) + rest

    for vec in rec(0, total):
        if any(vec):
            yield vec


@pytest.fixture(scope="session")
def fixture_quivers():
    return FIXTURE_QUIVERS
