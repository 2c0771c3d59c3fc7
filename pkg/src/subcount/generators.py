"""Named pattern families and random graphs."""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Any

import numpy as np

from .graph import Colouring, Graph
from .minors import MinorMap, grid_columns

FAMILIES = ("clique", "empty", "path", "cycle", "star", "perfect_matching",
            "grid", "subdivided_grid", "clique_grid")


def clique(k: int) -> Graph:
    return Graph.complete(k)


def path(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def star(k: int) -> Graph:
    """Star on ``k`` vertices with centre 0."""
    if k < 1:
        raise ValueError("a star needs at least one vertex")
    return Graph(k, [(0, i) for i in range(1, k)])


def perfect_matching(k: int) -> Graph:
    if k % 2:
        raise ValueError(f"perfect matching needs an even order, got {k}")
    return Graph(k, [(2 * i, 2 * i + 1) for i in range(k // 2)])


def grid(rows: int, cols: int) -> Graph:
    """``rows x cols`` grid; vertex ``r*cols + c`` sits in row r, column c."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def subdivided_grid(rows: int, cols: int) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Grid with every edge subdivided once.

    Original vertices keep ids ``0..rows*cols-1``; the subdivision vertex of
    each grid edge follows in grid edge order. Also returns the map from
    grid edge to its subdivision vertex.
    """
    base = grid(rows, cols)
    n = base.n
    edges = []
    middle: dict[tuple[int, int], int] = {}
    for u, v in base.edge_list():
        s = n + len(middle)
        middle[(u, v)] = s
        edges += [(u, s), (s, v)]
    return Graph(n + len(middle), edges), middle


def _grid_minor_map(rows: int, cols: int, absorb: dict[tuple[int, int], int] | None) -> MinorMap | None:
    k = rows
    cols_needed = comb(k, 2)
    if k < 2 or cols_needed > cols:
        return None
    images = {}
    for i in range(1, k + 1):
        for c, column in enumerate(grid_columns(k)):
            v = (i - 1) * cols + c
            image = {v}
            if absorb is not None:
                # a singleton original vertex is not adjacent to its grid
                # neighbours; take the subdivision vertices to the right and below
                for w in (v + 1, v + cols):
                    if (v, w) in absorb:
                        image.add(absorb[(v, w)])
            images[(i, column)] = frozenset(image)
    return MinorMap(k, images)


def clique_grid(k: int) -> Graph:
    """The ``k x C(k,2)`` grid."""
    return grid(k, comb(k, 2))


def generate_pattern(family: str, **params: Any) -> tuple[Graph, MinorMap | None]:
    """Build a named pattern, plus its canonical grid minor map when it has one.

    Grid families take either ``k`` (square, or ``k x C(k,2)`` for
    ``clique_grid``) or ``rows`` and ``cols``. Their minor map uses
    ``k = rows`` and exists when ``C(rows, 2) <= cols``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown pattern family {family!r}; choose from {', '.join(FAMILIES)}")
    if family in ("grid", "subdivided_grid", "clique_grid"):
        if family == "clique_grid":
            k = _need(params, "k")
            rows, cols = k, comb(k, 2)
        elif "rows" in params or "cols" in params:
            rows, cols = _need(params, "rows"), _need(params, "cols")
        else:
            rows = cols = _need(params, "k")
        if rows < 1 or cols < 1:
            raise ValueError("grid dimensions must be positive")
        if family == "subdivided_grid":
            g, middle = subdivided_grid(rows, cols)
            return g, _grid_minor_map(rows, cols, middle)
        return grid(rows, cols), _grid_minor_map(rows, cols, None)
    k = _need(params, "k")
    if k < 0:
        raise ValueError("order must be non-negative")
    builder = {"clique": clique, "empty": Graph.empty, "path": path, "cycle": cycle,
               "star": star, "perfect_matching": perfect_matching}[family]
    return builder(k), None


def _need(params: dict, name: str) -> int:
    if name not in params:
        raise ValueError(f"missing parameter {name!r}")
    return int(params[name])


def random_graph(n: int, p: float, rng: np.random.Generator | int | None = None) -> Graph:
    """Erdos-Renyi G(n, p)."""
    rng = np.random.default_rng(rng)
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return Graph(n)
    keep = rng.random(len(pairs)) < p
    return Graph(n, [e for e, b in zip(pairs, keep) if b])


def random_colouring(n: int, k: int, rng: np.random.Generator | int | None = None) -> Colouring:
    rng = np.random.default_rng(rng)
    return Colouring((rng.integers(1, k + 1, size=n)).tolist(), k)
