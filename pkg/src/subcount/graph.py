"""Core graph types: simple graphs, labelled graphs and vertex colourings.

Vertices are dense integers ``0..n-1``. Edge sets and labelled graphs are
also encoded as integer bitmasks over vertex pairs in *colex* order::

    (0,1) -> bit 0, (0,2) -> bit 1, (1,2) -> bit 2, (0,3) -> bit 3, ...

so the pairs among the first ``d`` vertices occupy exactly the low
``C(d,2)`` bits. The same encoding is used by the truth-table file format.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


def pair_index(a: int, b: int) -> int:
    """Bit position of the unordered pair {a, b} in colex order."""
    if a > b:
        a, b = b, a
    return b * (b - 1) // 2 + a


def num_pairs(k: int) -> int:
    return k * (k - 1) // 2


def pairs(k: int) -> list[tuple[int, int]]:
    """All pairs (a, b) with a < b < k, listed in colex (bit) order."""
    return [(a, b) for b in range(k) for a in range(b)]


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_matrix", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        norm = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            norm.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(norm)
        self.adj: tuple[int, ...] = tuple(adj)
        self._matrix = None
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_key(cls, n: int, key: int) -> "Graph":
        """Graph whose edge set is the colex bitmask ``key``."""
        return cls(n, [p for i, p in enumerate(pairs(n)) if key >> i & 1])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    # queries --------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def key(self) -> int:
        """Edge set as a colex bitmask."""
        out = 0
        for u, v in self.edges:
            out |= 1 << pair_index(u, v)
        return out

    def matrix(self) -> np.ndarray:
        """Boolean adjacency matrix (cached, read-only)."""
        if self._matrix is None:
            mat = np.zeros((self.n, self.n), dtype=bool)
            for u, v in self.edges:
                mat[u, v] = mat[v, u] = True
            mat.setflags(write=False)
            self._matrix = mat
        return self._matrix

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
        vs = list(vertices)
        edges = [(i, j) for j in range(len(vs)) for i in range(j)
                 if self.adj[vs[i]] >> vs[j] & 1]
        return Graph(len(vs), edges)

    def induced_key(self, vertices: Sequence[int]) -> int:
        """Colex key of the labelled graph ``G[v_1, ..., v_k]``."""
        out = 0
        for j in range(1, len(vertices)):
            row = self.adj[vertices[j]]
            base = j * (j - 1) // 2
            for i in range(j):
                if row >> vertices[i] & 1:
                    out |= 1 << (base + i)
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def complement(self) -> "Graph":
        return Graph(self.n, [(u, v) for u, v in combinations(range(self.n), 2)
                              if not self.has_edge(u, v)])

    def add_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + [tuple(e) for e in extra])

    # dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_list()})"


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


class LabelledGraph:
    """A pair (H, pi) where ``labelling[i]`` is the vertex carrying label i+1.

    Equality and hashing are *labelled-graph* equality: two labelled graphs
    are equal when the same label pairs are adjacent, whatever the
    underlying vertex names. That is what ``key()`` captures.
    """

    __slots__ = ("graph", "labelling", "_key")

    def __init__(self, graph: Graph, labelling: Sequence[int] | None = None):
        if labelling is None:
            labelling = tuple(range(graph.n))
        labelling = tuple(int(v) for v in labelling)
        if sorted(labelling) != list(range(graph.n)):
            raise ValueError("labelling must be a bijection onto the vertices")
        self.graph = graph
        self.labelling = labelling
        self._key = None

    @classmethod
    def from_key(cls, k: int, key: int) -> "LabelledGraph":
        return cls(Graph.from_key(k, key))

    @property
    def k(self) -> int:
        return self.graph.n

    def key(self) -> int:
        if self._key is None:
            self._key = self.graph.induced_key(self.labelling)
        return self._key

    def label_adjacent(self, i: int, j: int) -> bool:
        """Are labels i and j (1-based) adjacent?"""
        return self.graph.has_edge(self.labelling[i - 1], self.labelling[j - 1])

    def is_labelled_subgraph_of(self, other: "LabelledGraph") -> bool:
        return self.k == other.k and self.key() & ~other.key() == 0

    def canonical(self) -> "LabelledGraph":
        """Representative on vertex set [k] with the identity labelling."""
        return LabelledGraph.from_key(self.k, self.key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self.k == other.k and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.k, self.key()))

    def __repr__(self) -> str:
        return f"LabelledGraph(k={self.k}, key={self.key():#x})"


class Colouring:
    """Vertex colouring ``f: V -> [k]`` (colours are 1-based, surjectivity not required)."""

    __slots__ = ("assignment", "k")

    def __init__(self, assignment: Sequence[int], k: int):
        assignment = tuple(int(c) for c in assignment)
        for v, c in enumerate(assignment):
            if not 1 <= c <= k:
                raise ValueError(f"vertex {v} has colour {c} outside 1..{k}")
        self.assignment = assignment
        self.k = k

    @classmethod
    def rainbow(cls, n: int) -> "Colouring":
        return cls(range(1, n + 1), n)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {c: [] for c in range(1, self.k + 1)}
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def is_colourful(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return len(vs) == self.k and {self.assignment[v] for v in vs} == set(range(1, self.k + 1))

    def restrict(self, vertices: Sequence[int]) -> "Colouring":
        return Colouring([self.assignment[v] for v in vertices], self.k)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.assignment, dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Colouring):
            return NotImplemented
        return self.k == other.k and self.assignment == other.assignment

    def __hash__(self) -> int:
        return hash((self.k, self.assignment))

    def __repr__(self) -> str:
        return f"Colouring(k={self.k}, {list(self.assignment)})"


def falling_factorial(n: int, k: int) -> int:
    """n! / (n-k)!, zero when k > n."""
    if k > n:
        return 0
    out = 1
    for i in range(k):
        out *= n - i
    return out


def iter_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(n), k)
