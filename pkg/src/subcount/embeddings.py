"""Brute-force embedding, occurrence, automorphism and clique counters.

These are the reference counters that everything else is checked against,
so they favour obviously-correct enumeration over cleverness.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterable, Union

import numpy as np

from .config import ISO_GUARD
from .errors import GuardError
from .graph import Colouring, Graph, LabelledGraph, bits, num_pairs, pair_index, pairs
from .kernel import count_matching, key_set_filter

LabelledLike = Union[LabelledGraph, Graph]


def _as_key_set(H: LabelledLike | Iterable[LabelledLike]) -> tuple[int, frozenset[int]]:
    if isinstance(H, Graph):
        H = LabelledGraph(H)
    if isinstance(H, LabelledGraph):
        return H.k, frozenset([H.key()])
    members = [LabelledGraph(h) if isinstance(h, Graph) else h for h in H]
    if not members:
        raise ValueError("empty class of labelled graphs; the order k is undefined")
    ks = {m.k for m in members}
    if len(ks) != 1:
        raise ValueError(f"labelled graphs of mixed orders {sorted(ks)}")
    return ks.pop(), frozenset(m.key() for m in members)


def count_strong_embeddings(H: LabelledLike | Iterable[LabelledLike], G: Graph, threads: int = 1,
                            budget: int | None = None) -> int:
    """Injective maps ``[k] -> V(G)`` realising (at least one member of) ``H`` exactly.

    A plain ``Graph`` is read with the identity labelling. Each map is counted
    once even when it realises several members.
    """
    k, keys = _as_key_set(H)
    return count_matching(G, k, key_set_filter(keys), threads=threads, budget=budget)


def count_colourful_strong_embeddings(H: LabelledLike | Iterable[LabelledLike], G: Graph, f: Colouring,
                                      threads: int = 1, budget: int | None = None) -> int:
    k, keys = _as_key_set(H)
    if f.k != k:
        raise ValueError(f"colouring has {f.k} colours but the pattern has {k} vertices")
    return count_matching(G, k, key_set_filter(keys), colouring=f, threads=threads, budget=budget)


# isomorphism ----------------------------------------------------------------

def _guard(n: int, guard: int) -> None:
    if n > guard:
        raise GuardError(f"isomorphism search on {n} vertices", projected=factorial(n),
                         limit=factorial(guard))


def _invariant(G: Graph) -> tuple:
    return (G.n, G.m, tuple(sorted(G.degrees())))


def _extend_iso(A: Graph, B: Graph, order: list[int], mapping: list[int], used: int, depth: int,
                count_all: bool) -> int:
    if depth == len(order):
        return 1
    u = order[depth]
    du = A.degree(u)
    found = 0
    for w in range(B.n):
        if used >> w & 1 or B.degree(w) != du:
            continue
        ok = True
        for d in range(depth):
            x = order[d]
            if A.has_edge(u, x) != B.has_edge(w, mapping[x]):
                ok = False
                break
        if not ok:
            continue
        mapping[u] = w
        found += _extend_iso(A, B, order, mapping, used | 1 << w, depth + 1, count_all)
        if found and not count_all:
            return found
    return found


def _search_order(A: Graph) -> list[int]:
    # BFS from high-degree vertices so adjacency constraints bite early
    order: list[int] = []
    seen = set()
    for s in sorted(range(A.n), key=lambda v: (-A.degree(v), v)):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(A.neighbours(u), key=lambda v: (-A.degree(v), v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def is_isomorphic(A: Graph, B: Graph, guard: int = ISO_GUARD) -> bool:
    if _invariant(A) != _invariant(B):
        return False
    _guard(A.n, guard)
    return _extend_iso(A, B, _search_order(A), [0] * A.n, 0, 0, False) > 0


def count_automorphisms(H: Graph, guard: int = ISO_GUARD) -> int:
    """|Aut(H)| by backtracking over vertex permutations."""
    _guard(H.n, guard)
    return _extend_iso(H, H, _search_order(H), [0] * H.n, 0, 0, True)


# labelled keys --------------------------------------------------------------

@lru_cache(maxsize=None)
def _relabel_table(k: int) -> tuple[np.ndarray, np.ndarray]:
    """For each permutation p, the source bit of every target bit under relabelling."""
    perms = np.array(list(permutations(range(k))), dtype=np.intp).reshape(factorial(k), k)
    ps = pairs(k)
    src = np.zeros((perms.shape[0], len(ps)), dtype=np.int64)
    for r, p in enumerate(perms):
        for bit, (a, b) in enumerate(ps):
            src[r, bit] = pair_index(int(p[a]), int(p[b]))
    return perms, src


def relabel_key(key: int, k: int, perm) -> int:
    """Key of the labelled graph whose label i+1 sits where label ``perm[i]+1`` sat in ``key``."""
    out = 0
    for bit, (a, b) in enumerate(pairs(k)):
        if key >> pair_index(perm[a], perm[b]) & 1:
            out |= 1 << bit
    return out


def key_orbit(key: int, k: int) -> np.ndarray:
    """All labelled keys of the graph ``Graph.from_key(k, key)`` (with repetition)."""
    _, src = _relabel_table(k)
    if src.shape[1] == 0:
        return np.zeros(src.shape[0], dtype=np.int64)
    bitsarr = (np.int64(key) >> src) & 1
    weights = np.left_shift(np.int64(1), np.arange(src.shape[1], dtype=np.int64))
    return (bitsarr * weights).sum(axis=1)


@lru_cache(maxsize=None)
def graph_classes(k: int, guard: int = 6) -> tuple[int, ...]:
    """One key per isomorphism class of k-vertex graphs (the smallest in its orbit)."""
    if k > guard:
        raise GuardError(f"isomorphism classes of {k}-vertex graphs", projected=2 ** num_pairs(k),
                         limit=2 ** num_pairs(guard))
    total = 1 << num_pairs(k)
    seen = np.zeros(total, dtype=bool)
    reps = []
    for key in range(total):
        if seen[key]:
            continue
        reps.append(key)
        seen[key_orbit(key, k)] = True
    return tuple(reps)


@lru_cache(maxsize=None)
def canonical_key(key: int, k: int) -> int:
    """Smallest key in the orbit: equal iff the underlying graphs are isomorphic."""
    return int(key_orbit(key, k).min())


def class_slice(keys: Iterable[int], H: Graph) -> frozenset[int]:
    """Members of a key set whose graph is isomorphic to ``H``."""
    k = H.n
    if k <= 7:
        target = canonical_key(H.key(), k)
        return frozenset(x for x in keys if canonical_key(x, k) == target)
    return frozenset(x for x in keys if is_isomorphic(Graph.from_key(k, x), H))


# occurrences ----------------------------------------------------------------

def _iso_tester(targets: list[Graph], guard: int):
    cache: dict[int, bool] = {}
    invs = {_invariant(t) for t in targets}

    def test(sub: Graph) -> bool:
        key = sub.key()
        hit = cache.get(key)
        if hit is None:
            hit = _invariant(sub) in invs and any(is_isomorphic(sub, t, guard) for t in targets)
            cache[key] = hit
        return hit

    return test


def _targets(H: Graph | LabelledGraph | Iterable) -> list[Graph]:
    if isinstance(H, Graph):
        return [H]
    if isinstance(H, LabelledGraph):
        return [H.graph]
    out = []
    for h in H:
        out.append(h if isinstance(h, Graph) else h.graph)
    if len({h.n for h in out}) > 1:
        raise ValueError("patterns of mixed orders")
    return out


def count_induced_occurrences(H, G: Graph, guard: int = ISO_GUARD) -> int:
    """Vertex subsets ``U`` with ``G[U]`` isomorphic to ``H`` (or to some member of a class)."""
    targets = _targets(H)
    if not targets:
        return 0
    k = targets[0].n
    _guard(k, guard)
    if k > G.n:
        return 0
    test = _iso_tester(targets, guard)
    return sum(1 for U in combinations(range(G.n), k) if test(G.induced(U)))


def colourful_subsets(G: Graph, f: Colouring) -> Iterable[tuple[int, ...]]:
    if f.n != G.n:
        raise ValueError("colouring does not match the graph")
    classes = f.classes()
    for pick in product(*(classes[c] for c in range(1, f.k + 1))):
        yield tuple(sorted(pick))


def count_colourful_induced(H, G: Graph, f: Colouring, guard: int = ISO_GUARD) -> int:
    targets = _targets(H)
    if not targets:
        return 0
    k = targets[0].n
    if f.k != k:
        raise ValueError(f"colouring has {f.k} colours but the pattern has {k} vertices")
    _guard(k, guard)
    test = _iso_tester(targets, guard)
    return sum(1 for U in colourful_subsets(G, f) if test(G.induced(U)))


# copies and cliques ------------------------------------------------------------

def count_colourful_copies(H: Graph, G: Graph, f: Colouring, threads: int = 1,
                           budget: int | None = None) -> int:
    """Injective colourful maps ``V(H) -> V(G)`` sending every edge of H to an edge (not induced)."""
    if f.k != H.n:
        raise ValueError(f"colouring has {f.k} colours but the pattern has {H.n} vertices")
    hkey = np.int64(H.key())

    def accept(keys: np.ndarray) -> np.ndarray:
        return (keys & hkey) == hkey

    return count_matching(G, H.n, accept, colouring=f, threads=threads, budget=budget)


def count_cliques(G: Graph, k: int) -> int:
    """Number of k-subsets inducing a clique, by candidate-set recursion on bitsets."""
    if k == 0:
        return 1

    def rec(cand: int, need: int) -> int:
        if need == 0:
            return 1
        total = 0
        for v in bits(cand):
            if (cand >> v).bit_count() < need:
                break
            # only higher-numbered neighbours, so each clique is met once
            total += rec(cand & G.adj[v] & ~((2 << v) - 1), need - 1)
        return total

    return rec((1 << G.n) - 1, k)
