from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import C5, K3, K4, P3
from subcount.embeddings import class_slice, count_cliques, count_colourful_induced, count_colourful_strong_embeddings
from subcount.engines import count_exact_bruteforce, decide_bruteforce
from subcount.errors import DecodeError, GadgetDefect
from subcount.gadgets import (add_universal_vertex, build_clique_gadget, check_subgraph_closure, colourful_copies,
                              decode_colourful_copy, encode_clique, expected_gadget_order, export_gadget,
                              verify_gadget_identity)
from subcount.generators import generate_pattern, random_graph
from subcount.graph import Colouring, Graph, LabelledGraph, bits
from subcount.io import parse_colouring, parse_graph
from subcount.minors import MinorMap
from subcount.properties import get_property

GRID, GRID_MAP = generate_pattern("clique_grid", k=3)


def gadget(G, omega=None, H=GRID, m=GRID_MAP, k=3):
    return build_clique_gadget(G, k, H, m, omega)


def random_omega(n, seed):
    return Colouring([int(c) + 1 for c in np.random.default_rng(seed).permutation(n)], n)


class TestConstruction:
    def test_k3_size(self):
        g = gadget(K3)
        assert g.host.n == 63 == expected_gadget_order(K3, GRID, GRID_MAP)
        per_cell = {}
        for (cell, _), ids in g.copy_index.items():
            per_cell[cell] = per_cell.get(cell, 0) + 1
        assert sorted(per_cell.values()) == [6] * 6 + [9] * 3

    def test_single_edge_k2(self):
        H, m = generate_pattern("clique_grid", k=2)
        g = build_clique_gadget(Graph(2, [(0, 1)]), 2, H, m)
        assert len(g.copy_index) == 4
        assert all(v in e for (_, (v, e)) in g.copy_index)

    def test_edgeless_source(self):
        g = gadget(Graph(3))
        assert g.host.n == 0
        rep = verify_gadget_identity(g)
        assert rep.lhs == rep.rhs == 0

    def test_colouring_and_edge_rules(self):
        g = gadget(K4, random_omega(9, 1))
        om = g.source.omega
        for x in range(g.host.n):
            assert g.colouring[x] == om[g.h_vertex(x)]
        for x, y in g.host.edges:
            assert GRID.has_edge(g.h_vertex(x), g.h_vertex(y))
            (c1, (v1, e1), _), (c2, (v2, e2), _) = g.origin[x], g.origin[y]
            if c1[0] == c2[0]:
                assert v1 == v2
            elif c1[0] < c2[0]:
                assert v1 < v2
            else:
                assert v2 < v1
            if c1[1] == c2[1]:
                assert e1 == e2
        # no edges between different copies of the same cell
        for x, y in g.host.edges:
            if g.origin[x][0] == g.origin[y][0]:
                assert g.origin[x][1] == g.origin[y][1]

    def test_invalid_inputs(self):
        images = {c: GRID_MAP[c] for c in GRID_MAP.cells()}
        images[(1, (1, 2))] = frozenset({0, 8})
        with pytest.raises(ValueError, match="disjoint"):
            gadget(K3, m=MinorMap(3, images))
        with pytest.raises(ValueError, match="omega"):
            gadget(K3, Colouring([1] * 9, 9))

    def test_size_formula(self):
        for seed in range(10):
            G = random_graph(6, 0.5, seed)
            for fam in ("clique_grid", "subdivided_grid"):
                H, m = generate_pattern(fam, k=3)
                g = build_clique_gadget(G, 3, H, m)
                assert g.host.n == expected_gadget_order(G, H, m)
                inside = sum(len(m[c]) for c in m.cells())
                assert g.host.n == H.n - inside + sum(
                    len(m[(i, col)]) * (2 * G.m if i in col else G.n * G.m) for i, col in m.cells())


class TestIdentity:
    @pytest.mark.parametrize("G, want", [(K3, 1), (P3, 0), (K4, 4), (C5, 0)])
    def test_examples(self, G, want):
        rep = verify_gadget_identity(gadget(G))
        assert rep.lhs == rep.rhs == want and rep.equal

    def test_random_omega_and_subdivided(self):
        H, m = generate_pattern("subdivided_grid", k=3)
        for seed in range(4):
            G = random_graph(6, 0.6, seed)
            for pattern, mm in ((GRID, GRID_MAP), (H, m)):
                rep = verify_gadget_identity(build_clique_gadget(G, 3, pattern, mm, random_omega(pattern.n, seed)))
                assert rep.equal and rep.rhs == count_cliques(G, 3)

    def test_pruned_matches_exhaustive(self):
        """Small gadgets: the pruned search equals raw enumeration of colourful sets."""
        H, m = generate_pattern("clique_grid", k=2)
        for G in (Graph(3, [(0, 1), (1, 2)]), K3, Graph.complete(4)):
            g = build_clique_gadget(G, 2, H, m)
            assert len(colourful_copies(g)[0]) == count_colourful_induced(H, g.host, g.colouring) == G.m

    def test_k4(self):
        H, m = generate_pattern("clique_grid", k=4)
        rep = verify_gadget_identity(build_clique_gadget(Graph.complete(5), 4, H, m))
        assert rep.lhs == rep.rhs == 5

    def test_budget(self):
        from subcount.errors import GuardError
        with pytest.raises(GuardError):
            verify_gadget_identity(gadget(K4), budget=10)


class TestDecoder:
    def test_unique_copy_k3(self):
        g = gadget(K3)
        (Y,) = colourful_copies(g)[0]
        assert decode_colourful_copy(g, Y) == (0, 1, 2)

    def test_k4_all_triangles(self):
        g = gadget(K4, random_omega(9, 7))
        copies = colourful_copies(g)[0]
        assert sorted(decode_colourful_copy(g, Y) for Y in copies) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]

    def test_round_trip_and_detail(self):
        G = random_graph(6, 0.7, 11)
        g = gadget(G)
        for Y in colourful_copies(g)[0]:
            d = decode_colourful_copy(g, Y, detail=True)
            assert list(d.clique) == sorted(d.clique)
            for (j, l), e in d.tau2.items():
                assert e == (d.tau1[j], d.tau1[l])
            assert encode_clique(g, d.clique) == Y

    def test_rejects(self):
        g = gadget(K4)
        Y = list(colourful_copies(g)[0][0])
        with pytest.raises(DecodeError, match="colourful"):
            decode_colourful_copy(g, Y[:-1])
        # swap one vertex for another copy of the same pattern vertex in a different block
        x = Y[0]
        other = next(z for z in range(g.host.n) if z != x and g.h_vertex(z) == g.h_vertex(x)
                     and g.origin[z][1] != g.origin[x][1])
        with pytest.raises(DecodeError, match="induce"):
            decode_colourful_copy(g, [other] + Y[1:])
        with pytest.raises(DecodeError):
            encode_clique(g, [0, 1])
        with pytest.raises(DecodeError):
            encode_clique(gadget(C5), [0, 1, 2])

    def test_defect_is_detected(self):
        """A corrupted gadget whose colourful copy has two blocks in one cell raises a defect."""
        g = gadget(K4)
        Y = list(colourful_copies(g)[0][0])
        x = Y[0]
        cell = g.origin[x][0]
        other = next(z for z in range(g.host.n) if g.h_vertex(z) == g.h_vertex(x) and g.origin[z][1] != g.origin[x][1]
                     and g.origin[z][0] == cell)
        rest = [y for y in Y if y != x]
        extra = [(other, y) for y in rest if g.host.has_edge(x, y)]
        bad = g.with_extra_edges(extra)
        with pytest.raises(GadgetDefect):
            decode_colourful_copy(bad, [other] + rest)


class TestClosure:
    def test_zero_violations(self):
        assert check_subgraph_closure(gadget(K3), 1000, 0).violations == 0
        H, m = generate_pattern("clique_grid", k=2)
        g = build_clique_gadget(Graph(3, [(0, 1)]), 2, H, m)
        assert g.host.n > 0
        assert check_subgraph_closure(g, 200, 1).violations == 0

    def test_negative_control(self):
        g = gadget(K3)
        x = 0
        y = next(z for z in range(g.host.n) if not GRID.has_edge(g.h_vertex(x), g.h_vertex(z))
                 and g.h_vertex(x) != g.h_vertex(z))
        rep = check_subgraph_closure(g.with_extra_edges([(x, y)]), 5000, 2)
        assert rep.violations >= 1 and rep.examples

    def test_trials_must_be_positive(self):
        with pytest.raises(ValueError):
            check_subgraph_closure(gadget(K3), 0, 0)


class TestUniversalVertex:
    def test_examples(self):
        G2, f2 = add_universal_vertex(K3, Colouring.rainbow(3))
        assert G2 == Graph.complete(4) and f2.k == 4
        cor = get_property("clique_or_is")
        assert decide_bruteforce(cor, G2, 4, f2).answer
        S, fs = add_universal_vertex(Graph(3), Colouring.rainbow(3))
        assert S.m == 3 and not decide_bruteforce(cor, S, 4, fs).answer

    def test_contract(self):
        cor, clique = get_property("clique_or_is"), get_property("clique")
        for seed in range(40):
            G = random_graph(6, 0.5, seed)
            f = Colouring([int(c) for c in np.random.default_rng(seed).integers(1, 4, size=6)], 3)
            G2, f2 = add_universal_vertex(G, f)
            assert decide_bruteforce(cor, G2, 4, f2).answer == decide_bruteforce(clique, G, 3, f).answer
        f = Colouring([1, 2, 3, 1, 2], 3)
        G2, f2 = add_universal_vertex(C5, f)
        assert count_exact_bruteforce(cor, G2, 4, f2) == 0


class TestPassthrough:
    def test_labelled_brute_force_k2(self):
        """Connected triples: the only minimal class is P3, used as the pattern."""
        m = MinorMap(2, {(1, (1, 2)): frozenset({0}), (2, (1, 2)): frozenset({1})})
        phi = get_property("connected")
        sat = phi.satisfying_keys(3)
        slice_h = [LabelledGraph.from_key(3, x) for x in class_slice(sat, P3)]
        sat = [LabelledGraph.from_key(3, x) for x in sat]
        for seed in range(6):
            G = random_graph(5, 0.6, seed)
            g = build_clique_gadget(G, 2, P3, m, random_omega(3, seed))
            lhs = count_colourful_strong_embeddings(sat, g.host, g.colouring)
            rhs = count_colourful_strong_embeddings(slice_h, g.host, g.colouring)
            assert lhs == rhs == 6 * G.m      # every ordering of a copy is connected; one copy per edge

    @pytest.mark.parametrize("G", [K3, K4, Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])])
    def test_grid_pattern_k3(self, G):
        """Tuples whose labelled graph contains the labelled grid never carry extra edges."""
        g = gadget(G)
        lhs, rhs = _contain_counts(g)
        assert lhs == rhs == 8 * count_cliques(G, 3)       # aut(3x3 grid) = 8


def _contain_counts(g):
    """Colourful 9-tuples (v_u) with v_a v_b adjacent for every grid edge ab, any colours allowed.

    Returns (all such tuples, those inducing exactly the grid's edge count).
    """
    H, adj, f = GRID, g.host.adj, g.colouring
    order = list(range(H.n))
    earlier = [[w for w in range(u) if H.has_edge(u, w)] for u in order]
    full = (1 << g.host.n) - 1
    chosen = [0] * H.n
    total = exact = 0

    def rec(d, used):
        nonlocal total, exact
        if d == H.n:
            total += 1
            got = sum(1 for a in range(H.n) for b in range(a) if adj[chosen[a]] >> chosen[b] & 1)
            exact += got == H.m
            return
        cand = full
        for w in earlier[d]:
            cand &= adj[chosen[w]]
        for x in bits(cand):
            if f[x] in used:
                continue
            chosen[d] = x
            rec(d + 1, used | {f[x]})

    rec(0, frozenset())
    return total, exact


class TestExport:
    def test_files(self):
        g = gadget(K4)
        gtxt, ctxt, side = export_gadget(g)
        assert parse_graph(gtxt) == g.host
        assert parse_colouring(ctxt, g.host.n) == g.colouring
        data = json.loads(side)
        assert data["k"] == 3 and len(data["copies"]) == len(g.copy_index)
        ids = sorted(x for c in data["copies"] for x in c["host_vertices"])
        assert ids == list(range(g.host.n))
