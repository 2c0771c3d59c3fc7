"""The grid-minor gadget: a coloured graph whose colourful induced copies of a
pattern H correspond one-to-one with the k-cliques of a source graph G.

Given a minor map of the ``k x C(k,2)`` grid into H, every grid cell
``(i, {j,l})`` gets one copy of ``H[m(cell)]`` per vertex/edge pair ``(v, e)``
of G, subject to "if i is j or l then v lies on e". Vertices of H outside
the map are kept once. Every vertex inherits the colour of the H vertex
it copies, and two vertices are adjacent exactly when their colours are
adjacent in H and, for two copies, the copy indices agree along rows
(same v; increasing v going down), and along columns (same e).

The source vertex order used for "increasing" is the numeric id order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_BUDGET, ISO_GUARD
from .embeddings import count_cliques, is_isomorphic
from .errors import DecodeError, GadgetDefect, GuardError
from .graph import Colouring, Graph, bits
from .io import format_colouring, format_graph
from .minors import Cell, MinorMap

Pair = tuple[int, tuple[int, int]]          # (v, e) with e = (a, b), a < b


@dataclass
class GadgetSource:
    G: Graph
    k: int
    H: Graph
    minor_map: MinorMap
    omega: Colouring


@dataclass
class GadgetInstance:
    host: Graph
    colouring: Colouring
    copy_index: dict[tuple[Cell, Pair], tuple[int, ...]]
    residual: dict[int, int]                  # H vertex -> host vertex
    origin: list[tuple[Cell | None, Pair | None, int]]
    source: GadgetSource
    cell_of: dict[int, Cell] = field(default_factory=dict)   # H vertex -> its cell

    @property
    def k(self) -> int:
        return self.source.k

    def h_vertex(self, x: int) -> int:
        """The H vertex that host vertex x copies."""
        return self.origin[x][2]

    def colour_classes(self) -> dict[int, list[int]]:
        return self.colouring.classes()

    def with_extra_edges(self, extra: Iterable[Sequence[int]]) -> "GadgetInstance":
        """Copy with additional host edges (for negative controls)."""
        return GadgetInstance(self.host.add_edges(extra), self.colouring, self.copy_index, self.residual,
                              self.origin, self.source, self.cell_of)


def _check_omega(H: Graph, omega: Colouring) -> None:
    if omega.n != H.n or omega.k != H.n or sorted(omega.assignment) != list(range(1, H.n + 1)):
        raise ValueError("omega must give the vertices of H the distinct colours 1..|V(H)|")


def admissible_pairs(G: Graph, cell: Cell) -> list[Pair]:
    i, (j, l) = cell
    edges = G.edge_list()
    if i in (j, l):
        return [(v, e) for v in range(G.n) for e in edges if v in e]
    return [(v, e) for v in range(G.n) for e in edges]


def expected_gadget_order(G: Graph, H: Graph, m: MinorMap) -> int:
    """|V_H'| + sum over cells of |m(cell)| * (2|E(G)| or |V(G)||E(G)|)."""
    total = len(m.residual(H))
    for i, (j, l) in m.cells():
        copies = 2 * G.m if i in (j, l) else G.n * G.m
        total += len(m[(i, (j, l))]) * copies
    return total


def build_clique_gadget(G: Graph, k: int, H: Graph, m: MinorMap, omega: Colouring | None = None) -> GadgetInstance:
    if m.k != k:
        raise ValueError(f"minor map is for k={m.k}, asked for k={k}")
    report = m.validate(H)
    if not report.valid:
        raise ValueError(f"invalid minor map: condition '{report.condition}' fails at {report.witness}")
    if omega is None:
        omega = Colouring([u + 1 for u in range(H.n)], H.n)
    _check_omega(H, omega)

    origin: list[tuple[Cell | None, Pair | None, int]] = []
    residual: dict[int, int] = {}
    for u in m.residual(H):
        residual[u] = len(origin)
        origin.append((None, None, u))
    copy_index: dict[tuple[Cell, Pair], tuple[int, ...]] = {}
    cell_of: dict[int, Cell] = {}
    for cell in m.cells():
        members = sorted(m[cell])
        for u in members:
            cell_of[u] = cell
        for pair in admissible_pairs(G, cell):
            ids = []
            for u in members:
                ids.append(len(origin))
                origin.append((cell, pair, u))
            copy_index[(cell, pair)] = tuple(ids)

    copies: dict[int, list[int]] = {u: [] for u in range(H.n)}
    for x, (_, _, u) in enumerate(origin):
        copies[u].append(x)
    edges = []
    for a, b in H.edge_list():                  # Condition 1: colours adjacent in H
        for x in copies[a]:
            cx, px, _ = origin[x]
            for y in copies[b]:
                cy, py, _ = origin[y]
                if cx is None or cy is None or _condition_two(cx, px, cy, py):
                    edges.append((x, y))
    host = Graph(len(origin), edges)
    f = Colouring([omega[u] for (_, _, u) in origin], H.n)
    return GadgetInstance(host, f, copy_index, residual, origin, GadgetSource(G, k, H, m, omega), cell_of)


def _condition_two(c1: Cell, p1: Pair, c2: Cell, p2: Pair) -> bool:
    (i1, col1), (v1, e1) = c1, p1
    (i2, col2), (v2, e2) = c2, p2
    if i1 == i2 and v1 != v2:
        return False
    if i1 < i2 and not v1 < v2:
        return False
    if i2 < i1 and not v2 < v1:
        return False
    if col1 == col2 and e1 != e2:
        return False
    return True


# verification -------------------------------------------------------------------

@dataclass
class IdentityReport:
    lhs: int
    rhs: int
    equal: bool
    method: str
    nodes: int
    search_space: int


def _condition_one_holds(g: GadgetInstance) -> bool:
    H = g.source.H
    return all(H.has_edge(g.h_vertex(x), g.h_vertex(y)) for x, y in g.host.edges)


def _bfs_order(H: Graph) -> list[int]:
    order, seen = [], set()
    for s in range(H.n):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in H.neighbours(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def colourful_copies(g: GadgetInstance, budget: int | None = None) -> tuple[list[tuple[int, ...]], int, str]:
    """All colourful vertex sets of the host inducing a copy of H.

    Returns (sets as sorted tuples, search nodes visited, method). When
    every host edge joins colours adjacent in H, a colourful set induces a
    subgraph of H under the colour map, so it induces H exactly when every
    edge of H is realised; the search picks one vertex per colour along a
    BFS order of H and prunes as soon as an edge of H is missing. Otherwise
    every colourful set is tested for isomorphism.
    """
    H = g.source.H
    limit = DEFAULT_BUDGET if budget is None else budget
    omega = g.source.omega
    classes = g.colour_classes()
    by_h = {u: classes[omega[u]] for u in range(H.n)}
    space = prod(len(v) for v in by_h.values())
    adj = g.host.adj
    found: list[tuple[int, ...]] = []
    nodes = 0

    if _condition_one_holds(g):
        order = _bfs_order(H)
        masks = {u: sum(1 << x for x in by_h[u]) for u in range(H.n)}
        earlier_nbrs = [[w for w in order[:d] if H.has_edge(order[d], w)] for d in range(len(order))]
        chosen = [0] * H.n
        m_h = H.m

        def rec(d: int) -> None:
            nonlocal nodes
            if d == len(order):
                Y = [chosen[u] for u in range(H.n)]
                got = sum(1 for a in range(len(Y)) for b in range(a) if adj[Y[a]] >> Y[b] & 1)
                if got == m_h:
                    found.append(tuple(sorted(Y)))
                return
            u = order[d]
            cand = masks[u]
            for w in earlier_nbrs[d]:
                cand &= adj[chosen[w]]
            for x in bits(cand):
                nodes += 1
                if nodes > limit:
                    raise GuardError("colourful copy search", projected=space, limit=limit)
                chosen[u] = x
                rec(d + 1)

        rec(0)
        return found, nodes, "pruned"

    if space > limit:
        raise GuardError("colourful copy search", projected=space, limit=limit)
    if H.n > ISO_GUARD:
        raise GuardError("isomorphism test on the pattern", projected=H.n, limit=ISO_GUARD)
    from itertools import product
    for pick in product(*(by_h[u] for u in range(H.n))):
        nodes += 1
        if is_isomorphic(g.host.induced(pick), H):
            found.append(tuple(sorted(pick)))
    return found, nodes, "exhaustive"


def verify_gadget_identity(g: GadgetInstance, budget: int | None = None) -> IdentityReport:
    copies, nodes, method = colourful_copies(g, budget)
    H = g.source.H
    classes = g.colour_classes()
    space = prod(len(classes[g.source.omega[u]]) for u in range(H.n))
    lhs = len(copies)
    rhs = count_cliques(g.source.G, g.k)
    return IdentityReport(lhs, rhs, lhs == rhs, method, nodes, space)


# decoding ---------------------------------------------------------------------------

@dataclass
class Decoded:
    clique: tuple[int, ...]
    sigma: dict[Cell, Pair]
    tau1: dict[int, int]
    tau2: dict[tuple[int, int], tuple[int, int]]


def _induces_h(g: GadgetInstance, Y: Sequence[int]) -> bool:
    H = g.source.H
    hv = {x: g.h_vertex(x) for x in Y}
    realised = sum(1 for a, b in H.edges
                   if g.host.has_edge(*[x for x in Y if hv[x] in (a, b)]))
    sub = g.host.induced(sorted(Y))
    if realised == H.m and sub.m == H.m:
        return True
    if H.n > ISO_GUARD:
        raise GuardError("isomorphism test on the pattern", projected=H.n, limit=ISO_GUARD)
    if is_isomorphic(sub, H):
        raise GadgetDefect("a colourful copy of H is not realised through its colours")
    return False


def decode_colourful_copy(g: GadgetInstance, Y: Iterable[int], detail: bool = False):
    """Recover the k-clique of G encoded by a colourful copy Y of H.

    Returns the clique as (tau1(1), ..., tau1(k)), or a ``Decoded`` record
    when ``detail`` is set.
    """
    Y = sorted(set(int(y) for y in Y))
    H, G, k = g.source.H, g.source.G, g.k
    if any(not 0 <= y < g.host.n for y in Y):
        raise DecodeError("vertex outside the gadget")
    if not g.colouring.is_colourful(Y):
        raise DecodeError("the vertex set is not colourful")
    if not _induces_h(g, Y):
        raise DecodeError("the vertex set does not induce a copy of H")

    sigma: dict[Cell, Pair] = {}
    by_cell: dict[Cell, set[int]] = {}
    for y in Y:
        cell, pair, _ = g.origin[y]
        if cell is not None:
            by_cell.setdefault(cell, set()).add(y)
    for cell in g.source.minor_map.cells():
        inside = by_cell.get(cell, set())
        blocks = {g.origin[y][1] for y in inside}
        if len(blocks) != 1:
            raise GadgetDefect(f"cell {cell} meets {len(blocks)} copies")
        pair = blocks.pop()
        if set(g.copy_index[(cell, pair)]) != inside:
            raise GadgetDefect(f"cell {cell} holds only part of copy {pair}")
        sigma[cell] = pair

    tau1: dict[int, int] = {}
    tau2: dict[tuple[int, int], tuple[int, int]] = {}
    for (i, col), (v, e) in sigma.items():
        if tau1.setdefault(i, v) != v:
            raise GadgetDefect(f"row {i} uses two source vertices")
        if tau2.setdefault(col, e) != e:
            raise GadgetDefect(f"column {col} uses two source edges")
    seq = tuple(tau1[i] for i in range(1, k + 1))
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise GadgetDefect(f"decoded rows are not increasing: {seq}")
    for (j, l), e in tau2.items():
        if e != (min(seq[j - 1], seq[l - 1]), max(seq[j - 1], seq[l - 1])):
            raise GadgetDefect(f"column {(j, l)} carries edge {e}, rows give {seq[j - 1]}, {seq[l - 1]}")
    if any(not G.has_edge(a, b) for a in seq for b in seq if a < b):
        raise GadgetDefect(f"decoded set {seq} is not a clique")
    if detail:
        return Decoded(seq, sigma, tau1, tau2)
    return seq


def encode_clique(g: GadgetInstance, X: Iterable[int]) -> tuple[int, ...]:
    """The colourful copy of H assigned to the clique X (sorted host ids)."""
    xs = sorted(set(int(x) for x in X))
    G, k = g.source.G, g.k
    if len(xs) != k:
        raise DecodeError(f"expected {k} distinct source vertices")
    if any(not G.has_edge(a, b) for a in xs for b in xs if a < b):
        raise DecodeError(f"{xs} is not a clique of the source graph")
    Y = list(g.residual.values())
    for i, (j, l) in g.source.minor_map.cells():
        pair = (xs[i - 1], (xs[j - 1], xs[l - 1]))
        Y.extend(g.copy_index[((i, (j, l)), pair)])
    return tuple(sorted(Y))


# closure check ---------------------------------------------------------------------

@dataclass
class ClosureReport:
    trials: int
    violations: int
    examples: list = field(default_factory=list)
    note: str = ""


def check_subgraph_closure(g: GadgetInstance, trials: int, seed: int) -> ClosureReport:
    """Sample colourful sets; each must induce a subgraph of H under the colour map."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    H = g.source.H
    classes = g.colour_classes()
    pools = [classes[g.source.omega[u]] for u in range(H.n)]
    if any(not p for p in pools):
        return ClosureReport(0, 0, note="some colour class is empty; no colourful set exists")
    rng = np.random.default_rng(seed)
    bad = 0
    examples = []
    for _ in range(trials):
        Y = [p[int(rng.integers(len(p)))] for p in pools]
        wrong = [(x, y) for a, x in enumerate(Y) for y in Y[:a]
                 if g.host.has_edge(x, y) and not H.has_edge(g.h_vertex(x), g.h_vertex(y))]
        if wrong:
            bad += 1
            if len(examples) < 5:
                examples.append({"set": sorted(Y), "edges": wrong})
    return ClosureReport(trials, bad, examples)


# universal vertex -----------------------------------------------------------------

def add_universal_vertex(G: Graph, f: Colouring) -> tuple[Graph, Colouring]:
    """Append a vertex adjacent to everything, coloured k+1."""
    if f.n != G.n:
        raise ValueError("colouring does not match the graph")
    v = G.n
    G2 = Graph(G.n + 1, list(G.edges) + [(u, v) for u in range(G.n)])
    return G2, Colouring(list(f.assignment) + [f.k + 1], f.k + 1)


# export ------------------------------------------------------------------------------

def sidecar(g: GadgetInstance) -> dict:
    src = g.source
    return {
        "k": src.k,
        "source_graph": {"n": src.G.n, "edges": [list(e) for e in src.G.edge_list()]},
        "pattern": {"n": src.H.n, "edges": [list(e) for e in src.H.edge_list()]},
        "minor_map": [{"cell": [i, j, l], "vertices": sorted(src.minor_map[(i, (j, l))])}
                      for i, (j, l) in src.minor_map.cells()],
        "omega": list(src.omega.assignment),
        "residual": [{"pattern_vertex": u, "host_vertex": x} for u, x in sorted(g.residual.items())],
        "copies": [{"cell": [i, j, l], "v": v, "e": list(e), "host_vertices": list(ids)}
                   for ((i, (j, l)), (v, e)), ids in g.copy_index.items()],
    }


def export_gadget(g: GadgetInstance) -> tuple[str, str, str]:
    """(graph file text, colouring file text, JSON sidecar text)."""
    return format_graph(g.host), format_colouring(g.colouring), json.dumps(sidecar(g), sort_keys=True, indent=1)
