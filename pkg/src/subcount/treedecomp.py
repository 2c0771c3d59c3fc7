"""Tree decompositions: validation, a min-degree heuristic and exact treewidth for tiny graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import GuardError
from .graph import Graph, bits


@dataclass
class TreeDecomposition:
    """Tree ``tree`` whose node ``b`` carries the vertex set ``bags[b]``."""

    tree: Graph
    bags: list[frozenset[int]]

    def __post_init__(self):
        self.bags = [frozenset(int(v) for v in b) for b in self.bags]
        if len(self.bags) != self.tree.n:
            raise ValueError(f"{len(self.bags)} bags for a tree on {self.tree.n} nodes")

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @classmethod
    def single_bag(cls, n: int) -> "TreeDecomposition":
        return cls(Graph(1), [frozenset(range(n))])

    @classmethod
    def path(cls, bags: Sequence[Sequence[int]]) -> "TreeDecomposition":
        return cls(Graph(len(bags), [(i, i + 1) for i in range(len(bags) - 1)]),
                   [frozenset(b) for b in bags])


@dataclass
class TDReport:
    valid: bool
    width: int
    tree_errors: list[str] = field(default_factory=list)
    empty_bags: list[int] = field(default_factory=list)
    bad_vertices: list[int] = field(default_factory=list)
    uncovered_vertices: list[int] = field(default_factory=list)
    uncovered_edges: list[tuple[int, int]] = field(default_factory=list)
    disconnected_vertices: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def summary(self) -> str:
        if self.valid:
            return f"valid, width {self.width}"
        parts = []
        if self.tree_errors:
            parts.append("; ".join(self.tree_errors))
        if self.empty_bags:
            parts.append(f"empty bags {self.empty_bags}")
        if self.bad_vertices:
            parts.append(f"vertices out of range {self.bad_vertices}")
        if self.uncovered_vertices:
            parts.append(f"vertices in no bag {self.uncovered_vertices}")
        if self.uncovered_edges:
            parts.append(f"edges in no bag {self.uncovered_edges}")
        if self.disconnected_vertices:
            parts.append(f"bags of vertices {self.disconnected_vertices} not connected in the tree")
        return "invalid: " + ", ".join(parts)


def _is_tree(t: Graph) -> list[str]:
    errs = []
    if t.n == 0:
        return ["tree has no nodes"]
    if t.m != t.n - 1:
        errs.append(f"tree has {t.m} edges on {t.n} nodes")
    if not t.is_connected():
        errs.append("tree is not connected")
    return errs


def validate_tree_decomposition(G: Graph, td: TreeDecomposition) -> TDReport:
    """Check all three conditions and report every violation found."""
    rep = TDReport(valid=True, width=td.width)
    rep.tree_errors = _is_tree(td.tree)
    rep.empty_bags = [b for b, bag in enumerate(td.bags) if not bag]
    rep.bad_vertices = sorted({v for bag in td.bags for v in bag if not 0 <= v < G.n})
    where: dict[int, int] = {}
    for b, bag in enumerate(td.bags):
        for v in bag:
            where[v] = where.get(v, 0) | 1 << b
    rep.uncovered_vertices = [v for v in range(G.n) if v not in where]
    rep.uncovered_edges = [(u, v) for u, v in G.edge_list()
                           if not where.get(u, 0) & where.get(v, 0)]
    for v in range(G.n):
        if v in where and not _mask_connected(td.tree, where[v]):
            rep.disconnected_vertices.append(v)
    rep.valid = not (rep.tree_errors or rep.empty_bags or rep.bad_vertices or rep.uncovered_vertices
                     or rep.uncovered_edges or rep.disconnected_vertices)
    return rep


def _mask_connected(t: Graph, mask: int) -> bool:
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for b in bits(frontier):
            nxt |= t.adj[b]
        nxt &= mask
        frontier = nxt & ~seen
        seen |= frontier
    return seen == mask


def heuristic_tree_decomposition(G: Graph) -> TreeDecomposition:
    """Min-degree elimination ordering turned into a decomposition.

    Each eliminated vertex gives the bag {v} + its current neighbours; that
    bag hangs off the bag of the neighbour eliminated first afterwards.
    """
    n = G.n
    if n == 0:
        return TreeDecomposition(Graph(1), [frozenset()])
    adj = [set(G.neighbours(v)) for v in range(n)]
    alive = set(range(n))
    order = []
    bags = []
    while alive:
        v = min(alive, key=lambda x: (len(adj[x]), x))
        nb = adj[v]
        bags.append(frozenset(nb | {v}))
        order.append(v)
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        alive.discard(v)
        adj[v] = set()
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for i, bag in enumerate(bags):
        rest = [pos[u] for u in bag if pos[u] > i]
        if rest:
            edges.append((i, min(rest)))
        elif i + 1 < n:
            # separate component; chain it to the next bag to keep one tree
            edges.append((i, i + 1))
    return TreeDecomposition(Graph(n, edges), bags)


def exact_treewidth(G: Graph, guard: int = 12) -> int:
    """Treewidth by DP over vertex subsets (elimination orderings); only for tiny graphs."""
    n = G.n
    if n > guard:
        raise GuardError("exact treewidth is exponential in the vertex count", projected=2 ** n,
                         limit=2 ** guard)
    if n == 0:
        return -1
    adj = G.adj

    def q(S: int, v: int) -> int:
        # vertices outside S + v reachable from v through S
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            nb = adj[u] & ~seen
            seen |= nb
            out |= nb & ~S
            for w in bits(nb & S):
                stack.append(w)
        return (out & ~(1 << v)).bit_count()

    @lru_cache(maxsize=None)
    def tw(S: int) -> int:
        if S == 0:
            return -1
        best = n
        for v in bits(S):
            rest = S & ~(1 << v)
            best = min(best, max(tw(rest), q(rest, v)))
        return best

    return tw((1 << n) - 1)
