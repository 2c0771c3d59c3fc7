"""Line-oriented text formats.

graph          ``p <n> <m>`` then ``e <u> <v>`` lines
colouring      ``k <k>`` then ``c <vertex> <colour>`` lines, one per vertex
decomposition  ``td <bags> <width+1> <n>``, ``b <id> <v...>``, ``e <b1> <b2>``
minor map      ``mm <k> <|V(H)|>`` then ``cell <i> <j> <l> : <ids...>``
truth table    ``phi <k>`` then ``<hex key> <perm> <0|1>``

Blank lines and lines starting with ``#`` are ignored everywhere. Bag ids
and vertex ids are 0-based; grid cell indices are 1-based. A truth-table
permutation is a comma-separated list whose i-th entry is the vertex
carrying label i+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from pathlib import Path

from .errors import FormatError
from .graph import Colouring, Graph, num_pairs
from .minors import MinorMap
from .treedecomp import TreeDecomposition


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", no) from None


def _header(lines, tag: str, arity: int):
    try:
        no, toks = next(lines)
    except StopIteration:
        raise FormatError(f"missing '{tag}' header") from None
    if toks[0] != tag or len(toks) != arity + 1:
        raise FormatError(f"expected header '{tag}' with {arity} field(s), got {' '.join(toks)!r}", no)
    return no, [_int(t, no, f"{tag} header field") for t in toks[1:]]


# graph -------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    no, (n, m) = _header(lines, "p", 2)
    if n < 0 or m < 0:
        raise FormatError("negative size in header", no)
    seen: set[tuple[int, int]] = set()
    for no, toks in lines:
        if toks[0] != "e" or len(toks) != 3:
            raise FormatError(f"expected 'e <u> <v>', got {' '.join(toks)!r}", no)
        u, v = _int(toks[1], no, "vertex"), _int(toks[2], no, "vertex")
        for x in (u, v):
            if not 0 <= x < n:
                raise FormatError(f"vertex {x} out of range 0..{n - 1}", no)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise FormatError(f"duplicate edge {e[0]} {e[1]}", no)
        seen.add(e)
    if len(seen) != m:
        raise FormatError(f"header declares {m} edges but {len(seen)} were given")
    return Graph(n, seen)


def format_graph(G: Graph) -> str:
    out = [f"p {G.n} {G.m}"]
    out += [f"e {u} {v}" for u, v in G.edge_list()]
    return "\n".join(out) + "\n"


# colouring ---------------------------------------------------------------

def parse_colouring(text: str, n: int | None = None) -> Colouring:
    lines = _lines(text)
    no, (k,) = _header(lines, "k", 1)
    if k < 1:
        raise FormatError("colour count must be positive", no)
    got: dict[int, int] = {}
    for no, toks in lines:
        if toks[0] != "c" or len(toks) != 3:
            raise FormatError(f"expected 'c <vertex> <colour>', got {' '.join(toks)!r}", no)
        v, c = _int(toks[1], no, "vertex"), _int(toks[2], no, "colour")
        if v < 0 or (n is not None and v >= n):
            raise FormatError(f"vertex {v} out of range", no)
        if not 1 <= c <= k:
            raise FormatError(f"colour {c} outside 1..{k}", no)
        if v in got:
            raise FormatError(f"vertex {v} coloured twice", no)
        got[v] = c
    size = n if n is not None else (max(got) + 1 if got else 0)
    missing = [v for v in range(size) if v not in got]
    if missing:
        raise FormatError(f"vertices without a colour: {missing[:10]}")
    return Colouring([got[v] for v in range(size)], k)


def format_colouring(f: Colouring) -> str:
    out = [f"k {f.k}"] + [f"c {v} {c}" for v, c in enumerate(f.assignment)]
    return "\n".join(out) + "\n"


# tree decomposition ------------------------------------------------------

def parse_tree_decomposition(text: str, n: int | None = None) -> TreeDecomposition:
    lines = _lines(text)
    no, (nb, wp1, declared_n) = _header(lines, "td", 3)
    if n is not None and declared_n != n:
        raise FormatError(f"decomposition is for {declared_n} vertices, graph has {n}", no)
    bags: dict[int, list[int]] = {}
    tree_edges = []
    for no, toks in lines:
        if toks[0] == "b":
            if len(toks) < 2:
                raise FormatError("bag line needs an id", no)
            b = _int(toks[1], no, "bag id")
            if not 0 <= b < nb:
                raise FormatError(f"bag id {b} out of range 0..{nb - 1}", no)
            if b in bags:
                raise FormatError(f"bag {b} given twice", no)
            vs = [_int(t, no, "vertex") for t in toks[2:]]
            for v in vs:
                if not 0 <= v < declared_n:
                    raise FormatError(f"vertex {v} out of range 0..{declared_n - 1}", no)
            bags[b] = vs
        elif toks[0] == "e":
            if len(toks) != 3:
                raise FormatError("tree edge line must be 'e <b1> <b2>'", no)
            a, c = _int(toks[1], no, "bag id"), _int(toks[2], no, "bag id")
            for x in (a, c):
                if not 0 <= x < nb:
                    raise FormatError(f"bag id {x} out of range 0..{nb - 1}", no)
            if a == c:
                raise FormatError("tree edge is a loop", no)
            tree_edges.append((a, c))
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no)
    if set(bags) != set(range(nb)):
        raise FormatError(f"missing bags {sorted(set(range(nb)) - set(bags))}")
    width1 = max((len(set(b)) for b in bags.values()), default=0)
    if width1 != wp1:
        raise FormatError(f"header declares largest bag {wp1}, actual {width1}")
    try:
        tree = Graph(nb, tree_edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if tree.m != len(tree_edges):
        raise FormatError("duplicate tree edge")
    return TreeDecomposition(tree, [frozenset(bags[b]) for b in range(nb)])


def format_tree_decomposition(td: TreeDecomposition, n: int) -> str:
    out = [f"td {len(td.bags)} {td.width + 1} {n}"]
    out += [" ".join(["b", str(b)] + [str(v) for v in sorted(bag)]) for b, bag in enumerate(td.bags)]
    out += [f"e {a} {b}" for a, b in td.tree.edge_list()]
    return "\n".join(out) + "\n"


# minor map ---------------------------------------------------------------

def parse_minor_map(text: str, h_order: int | None = None) -> MinorMap:
    lines = _lines(text)
    no, (k, nh) = _header(lines, "mm", 2)
    if h_order is not None and nh != h_order:
        raise FormatError(f"minor map is for a pattern on {nh} vertices, pattern has {h_order}", no)
    images = {}
    for no, toks in lines:
        if toks[0] != "cell" or len(toks) < 6 or toks[4] != ":":
            raise FormatError("expected 'cell <i> <j> <l> : <ids...>'", no)
        i, j, l = (_int(t, no, "cell index") for t in toks[1:4])
        if not (1 <= i <= k and 1 <= j < l <= k):
            raise FormatError(f"cell ({i}, {j}, {l}) is not a grid cell for k={k}", no)
        if (i, (j, l)) in images:
            raise FormatError(f"cell ({i}, {j}, {l}) given twice", no)
        vs = [_int(t, no, "vertex") for t in toks[5:]]
        for v in vs:
            if not 0 <= v < nh:
                raise FormatError(f"vertex {v} out of range 0..{nh - 1}", no)
        images[(i, (j, l))] = frozenset(vs)
    if len(images) != k * comb(k, 2):
        raise FormatError(f"expected {k * comb(k, 2)} cells, got {len(images)}")
    return MinorMap(k, images)


def format_minor_map(m: MinorMap, h_order: int) -> str:
    out = [f"mm {m.k} {h_order}"]
    for i, (j, l) in m.cells():
        ids = " ".join(str(v) for v in sorted(m[(i, (j, l))]))
        out.append(f"cell {i} {j} {l} : {ids}")
    return "\n".join(out) + "\n"


# truth table -------------------------------------------------------------

@dataclass
class TruthTable:
    """Satisfying label keys of one predicate on k-vertex labelled graphs."""

    k: int
    ones: frozenset[int] = field(default_factory=frozenset)

    def __call__(self, key: int) -> bool:
        return key in self.ones


def parse_truth_table(text: str) -> TruthTable:
    lines = _lines(text)
    no, (k,) = _header(lines, "phi", 1)
    if k < 0:
        raise FormatError("order must be non-negative", no)
    limit = 1 << num_pairs(k)
    values: dict[int, int] = {}
    for no, toks in lines:
        if len(toks) != 3:
            raise FormatError("expected '<hex key> <perm> <0|1>'", no)
        try:
            key = int(toks[0], 16)
        except ValueError:
            raise FormatError(f"bad hex bitmask {toks[0]!r}", no) from None
        if not 0 <= key < limit:
            raise FormatError(f"bitmask {toks[0]} has bits beyond the {num_pairs(k)} vertex pairs", no)
        perm = [_int(t, no, "permutation entry") for t in toks[1].split(",")] if k else []
        if sorted(perm) != list(range(k)):
            raise FormatError(f"{toks[1]!r} is not a permutation of 0..{k - 1}", no)
        if toks[2] not in ("0", "1"):
            raise FormatError(f"value must be 0 or 1, got {toks[2]!r}", no)
        label_key = Graph.from_key(k, key).induced_key(perm)
        val = int(toks[2])
        if values.get(label_key, val) != val:
            raise FormatError("row contradicts an earlier row for the same labelled graph", no)
        values[label_key] = val
    return TruthTable(k, frozenset(key for key, v in values.items() if v))


def format_truth_table(k: int, ones) -> str:
    ident = ",".join(str(i) for i in range(k))
    out = [f"phi {k}"] + [f"{key:x} {ident} 1" for key in sorted(ones)]
    return "\n".join(out) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from None
