"""Grid minor maps.

The grid ``A`` has ``k`` rows and ``C(k,2)`` columns. A cell is written
``(i, (j, l))`` with ``1 <= i <= k`` and ``1 <= j < l <= k``; columns are
listed in lexicographic order of ``(j, l)``. Horizontal grid edges join
consecutive columns of one row, vertical ones join consecutive rows of
one column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .graph import Graph

Cell = tuple[int, tuple[int, int]]


def grid_columns(k: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, k + 1), 2))


def grid_cells(k: int) -> list[Cell]:
    cols = grid_columns(k)
    return [(i, c) for i in range(1, k + 1) for c in cols]


def grid_edges(k: int) -> list[tuple[Cell, Cell]]:
    cols = grid_columns(k)
    out: list[tuple[Cell, Cell]] = []
    for i in range(1, k + 1):
        for a, b in zip(cols, cols[1:]):
            out.append(((i, a), (i, b)))
    for i in range(1, k):
        for c in cols:
            out.append(((i, c), (i + 1, c)))
    return out


@dataclass
class MinorReport:
    valid: bool
    condition: str | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.valid


@dataclass
class MinorMap:
    """Map from the cells of the ``k x C(k,2)`` grid to vertex sets of a pattern."""

    k: int
    images: dict[Cell, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        self.images = {(int(i), (int(c[0]), int(c[1]))): frozenset(int(v) for v in vs)
                       for (i, c), vs in self.images.items()}

    @classmethod
    def from_mapping(cls, k: int, images: Mapping[Cell, object]) -> "MinorMap":
        return cls(k, {cell: frozenset(vs) for cell, vs in images.items()})

    def cells(self) -> list[Cell]:
        return grid_cells(self.k)

    def grid_edges(self) -> list[tuple[Cell, Cell]]:
        return grid_edges(self.k)

    def __getitem__(self, cell: Cell) -> frozenset[int]:
        return self.images[cell]

    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for vs in self.images.values():
            out |= vs
        return frozenset(out)

    def residual(self, H: Graph) -> list[int]:
        """Vertices of ``H`` outside every image, ascending."""
        cov = self.covered()
        return [v for v in range(H.n) if v not in cov]

    def validate(self, H: Graph) -> MinorReport:
        """Check the map against ``H``; the first failing condition is reported."""
        expected = set(self.cells())
        got = set(self.images)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            return MinorReport(False, "domain", {"missing": missing, "extra": extra})
        for cell in self.cells():
            vs = self.images[cell]
            if not vs:
                return MinorReport(False, "non-empty", cell)
            bad = [v for v in vs if not 0 <= v < H.n]
            if bad:
                return MinorReport(False, "range", {"cell": cell, "vertices": bad})
        owner: dict[int, Cell] = {}
        for cell in self.cells():
            for v in self.images[cell]:
                if v in owner:
                    return MinorReport(False, "disjoint", {"vertex": v, "cells": [owner[v], cell]})
                owner[v] = cell
        for cell in self.cells():
            if not _connected(H, self.images[cell]):
                return MinorReport(False, "connected", cell)
        for a, b in self.grid_edges():
            if not any(H.has_edge(u, v) for u in self.images[a] for v in self.images[b]):
                return MinorReport(False, "grid-edge", (a, b))
        return MinorReport(True)


def _connected(H: Graph, vs: frozenset[int]) -> bool:
    vs = set(vs)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in H.neighbours(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs
