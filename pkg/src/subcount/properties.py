"""Property families on labelled k-vertex graphs.

A property is a predicate ``phi_k`` on labelled graphs for every k. Because a
labelled graph is determined by its colex key (see ``graph``), every
predicate is evaluated once per ``(k, key)`` and cached; the enumeration
engines then only ever look up keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .config import MINIMAL_GUARD, MONOTONE_GUARD
from .embeddings import canonical_key, class_slice, is_isomorphic, key_orbit
from .errors import FormatError, GuardError
from .generators import generate_pattern
from .graph import Graph, LabelledGraph, num_pairs
from .io import parse_graph, parse_truth_table, read_text
from .kernel import check_order
from .treedecomp import exact_treewidth

Predicate = Callable[[int, LabelledGraph], bool]


@dataclass(eq=False)
class PropertyFamily:
    """A computable family k -> phi_k with declared (checkable) flags."""

    name: str
    predicate: Predicate
    symmetric: bool = False
    monotone: bool = False
    uniformly_monotone: bool = False
    description: str = ""
    _cache: dict = field(default_factory=dict, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    def value(self, k: int, key: int) -> bool:
        ck = (k, key)
        hit = self._cache.get(ck)
        if hit is None:
            hit = bool(self.predicate(k, LabelledGraph.from_key(k, key)))
            self._cache[ck] = hit
        return hit

    def __call__(self, k: int, hg: LabelledGraph) -> bool:
        return self.value(k, hg.key())

    def accepts(self, k: int) -> Callable[[np.ndarray], np.ndarray]:
        """Vectorised ``phi_k`` over an array of keys."""

        def accept(keys: np.ndarray) -> np.ndarray:
            if keys.size == 0:
                return np.zeros(0, dtype=bool)
            uniq, inv = np.unique(keys, return_inverse=True)
            vals = np.fromiter((self.value(k, int(u)) for u in uniq), dtype=bool, count=uniq.size)
            return vals[inv]

        return accept

    def satisfying_keys(self, k: int, guard: int | None = None) -> frozenset[int]:
        """Every key of L(k) that satisfies phi_k."""
        if guard is not None and k > guard:
            raise GuardError(f"walk over all labelled graphs on {k} vertices",
                             projected=2 ** num_pairs(k), limit=2 ** num_pairs(guard))
        check_order(k)
        return frozenset(x for x in range(1 << num_pairs(k)) if self.value(k, x))

    def flags(self) -> dict[str, bool]:
        return {"symmetric": self.symmetric, "monotone": self.monotone,
                "uniformly_monotone": self.uniformly_monotone}


def evaluate_property(phi: PropertyFamily, k: int, hg: LabelledGraph) -> int:
    if hg.k != k:
        raise ValueError(f"labelled graph has {hg.k} vertices, expected {k}")
    return int(phi(k, hg))


# built-in predicates -----------------------------------------------------------

def _clique(k: int, hg: LabelledGraph) -> bool:
    return hg.graph.m == k * (k - 1) // 2


def _independent(k: int, hg: LabelledGraph) -> bool:
    return hg.graph.m == 0


def _clique_or_is(k: int, hg: LabelledGraph) -> bool:
    return _clique(k, hg) or _independent(k, hg)


def _connected(k: int, hg: LabelledGraph) -> bool:
    return hg.graph.is_connected()


def _matching(k: int, hg: LabelledGraph) -> bool:
    if k % 2:
        return False
    return all(hg.label_adjacent(2 * i - 1, 2 * i) for i in range(1, k // 2 + 1))


def _even_edges(k: int, hg: LabelledGraph) -> bool:
    return hg.graph.m % 2 == 0


def clique() -> PropertyFamily:
    return PropertyFamily("clique", _clique, True, True, True, "the k vertices form a clique")


def independent_set() -> PropertyFamily:
    return PropertyFamily("independent_set", _independent, True, False, False,
                          "the k vertices span no edge")


def clique_or_is() -> PropertyFamily:
    return PropertyFamily("clique_or_is", _clique_or_is, True, False, False,
                          "clique or independent set")


def connected() -> PropertyFamily:
    return PropertyFamily("connected", _connected, True, True, True, "induced subgraph is connected")


def matching() -> PropertyFamily:
    return PropertyFamily("matching", _matching, False, True, True,
                          "labels 2i-1 and 2i are adjacent for every i (k even)")


def even_edges() -> PropertyFamily:
    return PropertyFamily("even_edges", _even_edges, True, False, False,
                          "even number of edges")


PatternSource = Callable[[int], "Graph | None"]


def _family_source(family: str) -> PatternSource:
    def source(k: int) -> Graph | None:
        try:
            return generate_pattern(family, k=k)[0]
        except ValueError:
            return None

    return source


def _fixed_source(P: Graph) -> PatternSource:
    return lambda k: P if k == P.n else None


def sub_pattern(source: PatternSource, name: str, symmetric: bool) -> PropertyFamily:
    """Copy of the pattern with its identity labelling: labels i, j adjacent for each pattern edge (i-1, j-1)."""
    pattern_keys: dict[int, int | None] = {}

    def pkey(k: int) -> int | None:
        if k not in pattern_keys:
            P = source(k)
            pattern_keys[k] = None if P is None else P.key()
        return pattern_keys[k]

    def pred(k: int, hg: LabelledGraph) -> bool:
        p = pkey(k)
        return p is not None and hg.key() & p == p

    return PropertyFamily(f"sub_pattern:{name}", pred, symmetric, True, True,
                          f"contains a labelled copy of {name}")


def induced_iso(source: PatternSource, name: str, complete: bool) -> PropertyFamily:
    def pred(k: int, hg: LabelledGraph) -> bool:
        P = source(k)
        return P is not None and is_isomorphic(hg.graph, P)

    return PropertyFamily(f"induced_iso:{name}", pred, True, complete, complete,
                          f"induced subgraph isomorphic to {name}")


def treewidth_at_least(threshold: Callable[[int], int], name: str) -> PropertyFamily:
    def pred(k: int, hg: LabelledGraph) -> bool:
        return exact_treewidth(hg.graph) >= threshold(k)

    return PropertyFamily(f"treewidth_at_least:{name}", pred, True, True, True,
                          f"treewidth at least {name}")


def from_truth_table(path: str | Path) -> PropertyFamily:
    table = parse_truth_table(read_text(path))

    def pred(k: int, hg: LabelledGraph) -> bool:
        return k == table.k and hg.key() in table.ones

    phi = PropertyFamily(f"table:{Path(path).name}", pred, description=f"truth table for k={table.k}")
    if table.k <= MONOTONE_GUARD + 1:
        # every other order is constantly false, so the flags are decided at k alone
        phi.symmetric = check_symmetric(phi, table.k, guard=MONOTONE_GUARD + 1)
        rep = check_uniformly_monotone(phi, table.k, guard=MONOTONE_GUARD + 1)
        phi.monotone = rep.monotone
        phi.uniformly_monotone = rep.monotone and rep.uniform
    return phi


# registry ----------------------------------------------------------------------

Factory = Callable[[str | None], PropertyFamily]
_REGISTRY: dict[str, Factory] = {}


def register_property(name: str, factory: Factory) -> None:
    """Make ``factory`` available under ``name`` (and ``name:arg``) in ``get_property``."""
    _REGISTRY[name] = factory


def _no_arg(maker: Callable[[], PropertyFamily]) -> Factory:
    def factory(arg: str | None) -> PropertyFamily:
        if arg:
            raise ValueError(f"property {maker().name!r} takes no argument")
        return maker()

    return factory


PATTERN_FAMILIES = ("clique", "empty", "path", "cycle", "star", "perfect_matching")


def _pattern_arg(arg: str | None) -> tuple[PatternSource, str, Graph | None]:
    if not arg:
        raise ValueError("expected a pattern family or a graph file after ':'")
    if arg in PATTERN_FAMILIES:
        return _family_source(arg), arg, None
    P = parse_graph(read_text(arg))
    return _fixed_source(P), Path(arg).name, P


def _sub_factory(arg: str | None) -> PropertyFamily:
    source, name, P = _pattern_arg(arg)
    if P is None:
        symmetric = arg in ("clique", "empty")
    else:
        symmetric = P.m in (0, P.n * (P.n - 1) // 2)
    return sub_pattern(source, name, symmetric)


def _induced_factory(arg: str | None) -> PropertyFamily:
    source, name, P = _pattern_arg(arg)
    complete = arg == "clique" if P is None else P.m == P.n * (P.n - 1) // 2
    return induced_iso(source, name, complete)


def _tw_factory(arg: str | None) -> PropertyFamily:
    if not arg:
        raise ValueError("treewidth_at_least needs a threshold, e.g. treewidth_at_least:2 or :k-2")
    text = arg.replace(" ", "")
    try:
        if text.startswith("k"):
            off = int(text[1:] or 0)
            return treewidth_at_least(lambda k: k + off, text)
        t = int(text)
    except ValueError:
        raise ValueError(f"bad treewidth threshold {arg!r}") from None
    return treewidth_at_least(lambda k: t, text)


def _table_factory(arg: str | None) -> PropertyFamily:
    if not arg:
        raise ValueError("table needs a truth-table file path")
    return from_truth_table(arg)


for _name, _maker in (("clique", clique), ("independent_set", independent_set),
                      ("clique_or_is", clique_or_is), ("connected", connected),
                      ("matching", matching), ("contains_perfect_matching_pattern", matching),
                      ("even_edges", even_edges)):
    register_property(_name, _no_arg(_maker))
register_property("sub_pattern", _sub_factory)
register_property("induced_iso", _induced_factory)
register_property("treewidth_at_least", _tw_factory)
register_property("table", _table_factory)


def get_property(spec: str) -> PropertyFamily:
    """Resolve ``name`` or ``name:arg`` to a fresh property family."""
    name, _, arg = spec.partition(":")
    if name not in _REGISTRY:
        raise ValueError(f"unknown property {name!r}; known: {', '.join(sorted(_REGISTRY))}")
    try:
        return _REGISTRY[name](arg or None)
    except FormatError:
        raise
    except OSError as exc:
        raise ValueError(str(exc)) from None


def builtin_properties() -> list[PropertyFamily]:
    """One instance of every built-in, with the pattern-based ones on representative families."""
    out = [clique(), independent_set(), clique_or_is(), connected(), matching(), even_edges()]
    out += [_sub_factory("path"), _sub_factory("cycle"), _sub_factory("clique"), _sub_factory("star"),
            _induced_factory("path"), _induced_factory("clique"), _induced_factory("star"),
            _tw_factory("2"), _tw_factory("k-2")]
    return out


def list_properties() -> list[str]:
    return sorted(_REGISTRY)


# minimal elements ------------------------------------------------------------------

def _sat_array(phi: PropertyFamily, k: int, guard: int) -> np.ndarray:
    keys = phi.satisfying_keys(k, guard)
    arr = np.zeros(1 << num_pairs(k), dtype=bool)
    if keys:
        arr[np.fromiter(keys, dtype=np.int64)] = True
    return arr


def _has_subset(sat: np.ndarray, npairs: int) -> np.ndarray:
    """``out[x]``: some satisfying key is a subset of x (subset-sum zeta transform)."""
    out = sat.copy()
    idx = np.arange(out.size)
    for b in range(npairs):
        hi = (idx >> b) & 1 == 1
        out[hi] |= out[idx[hi] ^ (1 << b)]
    return out


def _minimal(sat: np.ndarray, npairs: int) -> list[int]:
    sub = _has_subset(sat, npairs)
    out = []
    for x in np.flatnonzero(sat):
        x = int(x)
        if all(not sub[x ^ (1 << b)] for b in range(npairs) if x >> b & 1):
            out.append(x)
    return out


def _closure(sat: np.ndarray, k: int) -> np.ndarray:
    closed = sat.copy()
    done: set[int] = set()
    for x in np.flatnonzero(sat):
        c = canonical_key(int(x), k)
        if c not in done:
            done.add(c)
            closed[key_orbit(c, k)] = True
    return closed


def enumerate_minimal_labelled(phi: PropertyFamily, k: int, guard: int = MINIMAL_GUARD) -> list[LabelledGraph]:
    """min(phi_k): satisfying labelled graphs with no satisfying proper labelled spanning subgraph.

    Each is returned once, as the identity-labelled graph on [k], ordered by key.
    """
    sat = _sat_array(phi, k, guard)
    return [LabelledGraph.from_key(k, x) for x in _minimal(sat, num_pairs(k))]


def enumerate_minimal_unlabelled(phi: PropertyFamily, k: int, guard: int = MINIMAL_GUARD) -> list[Graph]:
    """min*(phi_k), one graph per isomorphism class."""
    sat = _closure(_sat_array(phi, k, guard), k)
    mins = _minimal(sat, num_pairs(k))
    reps = sorted({canonical_key(x, k) for x in mins}, key=lambda c: (bin(c).count("1"), c))
    return [Graph.from_key(k, c) for c in reps]


@dataclass
class MinimalSet:
    k: int
    labelled_minimal: list[LabelledGraph]
    unlabelled_minimal: list[Graph]


def minimal_set(phi: PropertyFamily, k: int, guard: int = MINIMAL_GUARD) -> MinimalSet:
    return MinimalSet(k, enumerate_minimal_labelled(phi, k, guard), enumerate_minimal_unlabelled(phi, k, guard))


@dataclass
class MonotonicityReport:
    k: int
    monotone: bool
    uniform: bool
    witness: dict | None = None


def check_uniformly_monotone(phi: PropertyFamily, k: int, guard: int = MONOTONE_GUARD) -> MonotonicityReport:
    """Exhaustive check of monotonicity and uniformity at one k.

    ``monotone``: every satisfying labelled graph stays satisfying after any
    single edge is added. ``uniform``: the graph of every minimal labelled
    element is itself minimal among the unlabelled satisfying graphs.
    """
    npairs = num_pairs(k)
    sat = _sat_array(phi, k, guard)
    witness: dict = {}
    monotone = True
    for x in np.flatnonzero(sat):
        x = int(x)
        bad = next((b for b in range(npairs) if not x >> b & 1 and not sat[x | 1 << b]), None)
        if bad is not None:
            monotone = False
            witness["monotone"] = {"satisfying": x, "superset": x | 1 << bad}
            break
    unl = {canonical_key(x, k) for x in _minimal(_closure(sat, k), npairs)}
    uniform = True
    for x in _minimal(sat, npairs):
        if canonical_key(x, k) not in unl:
            uniform = False
            witness["uniform"] = {"labelled_minimal": x}
            break
    return MonotonicityReport(k, monotone, uniform, witness or None)


def check_symmetric(phi: PropertyFamily, k: int, guard: int = MONOTONE_GUARD) -> bool:
    sat = _sat_array(phi, k, guard)
    return bool(np.array_equal(sat, _closure(sat, k)))


def flag_report(phi: PropertyFamily, max_k: int = MONOTONE_GUARD) -> dict[str, object]:
    """Compare declared flags with exhaustive checks for k = 1..max_k.

    A flag declared true must hold at every checked k; a flag declared false
    must fail at some checked k.
    """
    observed = {"symmetric": [], "monotone": [], "uniformly_monotone": []}
    for k in range(1, max_k + 1):
        rep = check_uniformly_monotone(phi, k, guard=max_k)
        observed["symmetric"].append(check_symmetric(phi, k, guard=max_k))
        observed["monotone"].append(rep.monotone)
        observed["uniformly_monotone"].append(rep.monotone and rep.uniform)
    out: dict[str, object] = {}
    agree = True
    for flag, vals in observed.items():
        holds = all(vals)
        out[flag] = {"declared": getattr(phi, flag), "observed_all_k": holds, "per_k": vals}
        agree &= holds == getattr(phi, flag)
    out["agree"] = agree
    return out


# alpha -----------------------------------------------------------------------------

def _as_keys(members: Iterable) -> tuple[int, frozenset[int]]:
    members = [m if isinstance(m, LabelledGraph) else LabelledGraph(m) for m in members]
    if not members:
        raise ValueError("empty class")
    ks = {m.k for m in members}
    if len(ks) != 1:
        raise ValueError("labelled graphs of mixed orders")
    return ks.pop(), frozenset(m.key() for m in members)


def alpha_coefficient(members: Iterable[LabelledGraph] | frozenset[int], hg: LabelledGraph) -> int:
    """Permutations sigma of [k] for which some member (H, pi') makes pi' . sigma^-1 . pi^-1 an automorphism of H.

    ``members`` may be labelled graphs or a set of keys (of order ``hg.k``).
    Evaluated literally, by enumerating sigma and pi'.
    """
    k = hg.k
    if isinstance(members, (set, frozenset)) and all(isinstance(x, (int, np.integer)) for x in members):
        keys = frozenset(int(x) for x in members)
    else:
        k2, keys = _as_keys(members)
        if k2 != k:
            raise ValueError("class and labelled graph have different orders")
    if hg.key() not in keys:
        raise ValueError("the labelled graph is not a member of the class")
    if k > 6:
        raise GuardError("alpha enumeration", projected=factorial(k) ** 2, limit=factorial(6) ** 2)
    H = hg.graph
    pi = hg.labelling                       # label i -> vertex pi[i]
    pi_inv = {v: i for i, v in enumerate(pi)}
    same = class_slice(keys, H)
    # the labellings pi' of H itself whose labelled graph lies in the slice
    primes = [p for p in permutations(range(k)) if H.induced_key(p) in same]
    edges = H.edges
    total = 0
    for sigma in permutations(range(k)):
        sigma_inv = [0] * k
        for i, s in enumerate(sigma):
            sigma_inv[s] = i
        for p in primes:
            amap = [p[sigma_inv[pi_inv[v]]] for v in range(k)]
            if all((min(amap[u], amap[v]), max(amap[u], amap[v])) in edges for u, v in edges):
                total += 1
                break
    return total


def alpha_by_labellings(keys: frozenset[int], H: Graph) -> int:
    """Independent route to alpha: the labellings of H whose labelled graph lies in the class."""
    return sum(1 for p in permutations(range(H.n)) if H.induced_key(p) in keys)

