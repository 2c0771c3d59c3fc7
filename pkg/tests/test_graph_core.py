from __future__ import annotations

from math import comb

import networkx as nx
import pytest

from conftest import C5, K3, K4, P3, to_nx
from subcount.errors import FormatError
from subcount.generators import generate_pattern, random_graph
from subcount.graph import Colouring, Graph, LabelledGraph, falling_factorial, num_pairs, pair_index, pairs
from subcount.io import (format_colouring, format_graph, format_minor_map, format_tree_decomposition,
                         parse_colouring, parse_graph, parse_minor_map, parse_tree_decomposition)
from subcount.minors import MinorMap, grid_cells, grid_edges
from subcount.treedecomp import (TreeDecomposition, exact_treewidth, heuristic_tree_decomposition,
                                 validate_tree_decomposition)


class TestGraph:
    def test_pair_index_is_colex(self):
        assert [pair_index(a, b) for a, b in pairs(4)] == list(range(6))
        assert pairs(3) == [(0, 1), (0, 2), (1, 2)]
        assert num_pairs(5) == 10

    def test_rejects_loops_and_range(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 0)])
        with pytest.raises(ValueError):
            Graph(2, [(0, 2)])

    def test_key_round_trip(self):
        G = random_graph(6, 0.5, 3)
        assert Graph.from_key(6, G.key()) == G

    def test_induced_and_labelled(self):
        G = C5
        sub = G.induced([0, 1, 2])
        assert sub.edge_list() == [(0, 1), (1, 2)]
        hg = LabelledGraph(P3, [1, 0, 2])          # label 1 -> vertex 1 (the centre)
        assert hg.label_adjacent(1, 2) and hg.label_adjacent(1, 3) and not hg.label_adjacent(2, 3)
        assert hg.key() == G.induced_key([1, 0, 2])

    def test_labelled_subgraph_order(self):
        empty = LabelledGraph(Graph(3))
        assert empty.is_labelled_subgraph_of(LabelledGraph(K3))
        assert not LabelledGraph(K3).is_labelled_subgraph_of(empty)

    def test_colouring(self):
        f = Colouring([1, 1, 2, 3], 3)
        assert f.is_colourful([0, 2, 3]) and not f.is_colourful([0, 1, 2])
        assert f.classes() == {1: [0, 1], 2: [2], 3: [3]}
        with pytest.raises(ValueError):
            Colouring([0, 1], 2)

    def test_falling_factorial(self):
        assert falling_factorial(8, 2) == 56
        assert falling_factorial(3, 5) == 0


class TestParsing:
    def test_examples(self):
        assert parse_graph("p 3 3\ne 0 1\ne 1 2\ne 0 2\n") == K3
        assert parse_graph("p 2 0\n") == Graph(2)

    @pytest.mark.parametrize("text, needle", [
        ("p 2 1\ne 0 0\n", "self-loop"),
        ("p 2 1\ne 0 2\n", "out of range"),
        ("p 3 2\ne 0 1\ne 1 0\n", "duplicate"),
        ("p 3 1\nx 0 1\n", "expected"),
        ("p 3 2\ne 0 1\n", "declares 2 edges"),
    ])
    def test_rejects(self, text, needle):
        with pytest.raises(FormatError, match=needle):
            parse_graph(text)

    def test_line_numbers(self):
        with pytest.raises(FormatError) as err:
            parse_graph("# comment\np 2 1\ne 0 0\n")
        assert err.value.line == 3

    def test_colouring_round_trip(self):
        f = Colouring([2, 1, 3, 1], 3)
        assert parse_colouring(format_colouring(f), 4) == f
        with pytest.raises(FormatError):
            parse_colouring("k 2\nc 0 1\n", 2)
        with pytest.raises(FormatError):
            parse_colouring("k 2\nc 0 3\nc 1 1\n", 2)

    def test_td_round_trip(self):
        td = TreeDecomposition.path([[0, 1], [1, 2]])
        back = parse_tree_decomposition(format_tree_decomposition(td, 3), 3)
        assert back.bags == td.bags and back.tree == td.tree
        with pytest.raises(FormatError, match="largest bag"):
            parse_tree_decomposition("td 1 3 3\nb 0 0 1\n", 3)

    def test_minor_map_round_trip(self):
        H, m = generate_pattern("clique_grid", k=3)
        back = parse_minor_map(format_minor_map(m, H.n), H.n)
        assert all(back[c] == m[c] for c in m.cells())
        with pytest.raises(FormatError):
            parse_minor_map("mm 3 9\ncell 1 1 2 : 0\n", 9)


class TestGenerators:
    def test_examples(self):
        H, m = generate_pattern("clique_grid", k=3)
        assert (H.n, H.m) == (9, 12) and m is not None and m.validate(H).valid
        S, ms = generate_pattern("subdivided_grid", k=2)
        assert (S.n, S.m) == (8, 8)
        M, _ = generate_pattern("perfect_matching", k=4)
        assert (M.n, M.m) == (4, 2) and all(d == 1 for d in M.degrees())
        with pytest.raises(ValueError):
            generate_pattern("perfect_matching", k=3)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_clique_grid_size(self, k):
        H, m = generate_pattern("clique_grid", k=k)
        c = comb(k, 2)
        assert H.n == k * c
        assert H.m == (k - 1) * c + k * (c - 1)
        assert m.validate(H).valid

    @pytest.mark.parametrize("family", ["grid", "subdivided_grid"])
    def test_square_grid_maps(self, family):
        H, m = generate_pattern(family, k=3)
        assert m.validate(H).valid
        for a, b in m.grid_edges():
            assert any(H.has_edge(x, y) for x in m[a] for y in m[b])

    def test_small_families(self):
        assert generate_pattern("cycle", k=5)[0].m == 5
        assert generate_pattern("star", k=4)[0].degree(0) == 3
        assert generate_pattern("path", k=4)[0].m == 3


class TestMinorMap:
    def test_grid_structure(self):
        assert len(grid_cells(3)) == 9
        assert len(grid_edges(3)) == 12

    @pytest.mark.parametrize("mutate, condition", [
        (lambda im: im.pop((1, (1, 2))), "domain"),
        (lambda im: im.update({(1, (1, 2)): frozenset()}), "non-empty"),
        (lambda im: im.update({(1, (1, 2)): frozenset({0, 1})}), "disjoint"),
        (lambda im: im.update({(1, (1, 2)): frozenset({0, 8})}), "disjoint"),
    ])
    def test_reports_failing_condition(self, mutate, condition):
        H, m = generate_pattern("clique_grid", k=3)
        images = {c: m[c] for c in m.cells()}
        mutate(images)
        rep = MinorMap(3, images).validate(H)
        assert not rep.valid and rep.condition == condition

    def test_connectivity_and_edge_conditions(self):
        H, m = generate_pattern("clique_grid", k=3)
        # add a spare isolated vertex 9 and map cell (1,{1,2}) to {0, 9}
        H2 = Graph(10, H.edges)
        images = {c: m[c] for c in m.cells()}
        images[(1, (1, 2))] = frozenset({0, 9})
        assert MinorMap(3, images).validate(H2).condition == "connected"
        # swap two far cells: images stay valid sets but a grid edge loses its host edge
        images = {c: m[c] for c in m.cells()}
        images[(1, (1, 2))], images[(3, (2, 3))] = images[(3, (2, 3))], images[(1, (1, 2))]
        assert MinorMap(3, images).validate(H).condition == "grid-edge"


class TestTreeDecomposition:
    def test_examples(self):
        rep = validate_tree_decomposition(P3, TreeDecomposition.single_bag(3))
        assert rep.valid and rep.width == 2
        rep = validate_tree_decomposition(K3, TreeDecomposition.path([[0, 1], [1, 2]]))
        assert not rep.valid and (0, 2) in rep.uncovered_edges
        C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        rep = validate_tree_decomposition(C4, TreeDecomposition.path([[0, 1], [1, 2], [2, 3], [3, 0]]))
        assert not rep.valid and 0 in rep.disconnected_vertices

    def test_heuristic_is_valid(self):
        for seed in range(30):
            G = random_graph(8, 0.4, seed)
            td = heuristic_tree_decomposition(G)
            assert validate_tree_decomposition(G, td).valid
            assert td.width >= exact_treewidth(G)

    def test_exact_treewidth_against_networkx_bound(self):
        from networkx.algorithms.approximation import treewidth_min_degree
        for seed in range(30):
            G = random_graph(7, 0.5, seed)
            upper, _ = treewidth_min_degree(to_nx(G))
            assert exact_treewidth(G) <= upper
        assert exact_treewidth(K4) == 3
        assert exact_treewidth(C5) == 2
        assert exact_treewidth(generate_pattern("grid", k=3)[0]) == 3

    def test_non_tree_reported(self):
        td = TreeDecomposition(Graph(3, [(0, 1), (1, 2), (0, 2)]), [frozenset({0})] * 3)
        assert not validate_tree_decomposition(Graph(1), td).valid


def test_networkx_agrees_on_connectivity():
    for seed in range(40):
        G = random_graph(6, 0.3, seed)
        assert G.is_connected() == nx.is_connected(to_nx(G))
