"""Counting colourful copies of a pattern by dynamic programming over a tree decomposition.

A table at decomposition node ``b`` maps ``(images of the bag, colours used)``
to the number of partial maps of the vertices in the subtree below ``b``
that send every pattern edge seen so far to a host edge and give every
vertex a different colour. Different colours already make the map
injective, so no separate injectivity bookkeeping is needed.
"""

from __future__ import annotations

from collections import defaultdict

from ..graph import Colouring, Graph, LabelledGraph
from ..treedecomp import TreeDecomposition, heuristic_tree_decomposition, validate_tree_decomposition

Table = dict[tuple[tuple[int, ...], int], int]


class _Ctx:
    def __init__(self, H: Graph, G: Graph, f: Colouring):
        self.H = H
        self.G = G
        self.bit = [1 << (f[v] - 1) for v in range(G.n)]
        self.by_colour: dict[int, list[int]] = defaultdict(list)
        for v in range(G.n):
            self.by_colour[self.bit[v]].append(v)


def _forget(table: Table, bag: tuple[int, ...], keep: tuple[int, ...]) -> Table:
    pos = [bag.index(u) for u in keep]
    out: Table = defaultdict(int)
    for (img, mask), c in table.items():
        out[(tuple(img[p] for p in pos), mask)] += c
    return out


def _introduce(ctx: _Ctx, table: Table, bag: tuple[int, ...], u: int) -> tuple[Table, tuple[int, ...]]:
    """Add pattern vertex u to the bag; returns the new table and the new (sorted) bag."""
    new_bag = tuple(sorted(bag + (u,)))
    at = new_bag.index(u)
    nbrs = [i for i, x in enumerate(bag) if ctx.H.has_edge(u, x)]
    out: Table = defaultdict(int)
    G = ctx.G
    for (img, mask), c in table.items():
        for bit, verts in ctx.by_colour.items():
            if mask & bit:
                continue
            for w in verts:
                if all(G.has_edge(w, img[i]) for i in nbrs):
                    out[(img[:at] + (w,) + img[at:], mask | bit)] += c
    return out, new_bag


def _convert(ctx: _Ctx, table: Table, src: tuple[int, ...], dst: tuple[int, ...]) -> Table:
    keep = tuple(u for u in src if u in dst)
    table = _forget(table, src, keep)
    bag = keep
    for u in dst:
        if u not in bag:
            table, bag = _introduce(ctx, table, bag, u)
    return table


def _join(tables: list[Table], bag: tuple[int, ...], ctx: _Ctx) -> Table:
    acc = tables[0]
    for other in tables[1:]:
        grouped: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
        for (img, mask), c in other.items():
            grouped[img].append((mask, c))
        out: Table = defaultdict(int)
        for (img, mask), c in acc.items():
            here = 0
            for w in img:
                here |= ctx.bit[w]
            for mask2, c2 in grouped.get(img, ()):
                # the two subtrees may share only the bag's own colours
                if mask & mask2 == here:
                    out[(img, mask | mask2)] += c * c2
        acc = out
    return acc


def count_colourful_copies_dp(H: Graph | LabelledGraph, td: TreeDecomposition | None, G: Graph,
                              f: Colouring) -> int:
    """Injective maps V(H) -> V(G) with colourful image, sending every edge of H to an edge of G.

    ``td`` must be a tree decomposition of ``H``; ``None`` uses a min-degree
    heuristic decomposition.
    """
    if isinstance(H, LabelledGraph):
        H = H.graph.induced(H.labelling)
    k = H.n
    if f.k != k:
        raise ValueError(f"colouring has {f.k} colours but the pattern has {k} vertices")
    if f.n != G.n:
        raise ValueError("colouring does not match the host graph")
    if td is None:
        td = heuristic_tree_decomposition(H)
    report = validate_tree_decomposition(H, td)
    if not report.valid:
        raise ValueError(f"not a tree decomposition of the pattern: {report.summary()}")
    if k == 0:
        return 1
    ctx = _Ctx(H, G, f)
    bags = [tuple(sorted(b)) for b in td.bags]
    # root at node 0, iterative post-order
    parent = {0: -1}
    order = [0]
    for b in order:
        for c in td.tree.neighbours(b):
            if c not in parent:
                parent[c] = b
                order.append(c)
    children: dict[int, list[int]] = defaultdict(list)
    for b in order[1:]:
        children[parent[b]].append(b)
    tables: dict[int, Table] = {}
    for b in reversed(order):
        if children[b]:
            parts = [_convert(ctx, tables.pop(c), bags[c], bags[b]) for c in children[b]]
            tables[b] = _join(parts, bags[b], ctx)
        else:
            tables[b] = _convert(ctx, {((), 0): 1}, (), bags[b])
    final = _forget(tables[0], bags[0], ())
    return final.get(((), (1 << k) - 1), 0)
