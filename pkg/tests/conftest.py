from __future__ import annotations

import networkx as nx
import pytest

from subcount.graph import Graph


def from_nx(g: nx.Graph) -> Graph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(pos[a], pos[b]) for a, b in g.edges()])


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edge_list())
    return g


def atlas(max_n: int, min_n: int = 0) -> list[Graph]:
    """One graph per isomorphism class, from the networkx atlas (n <= 7)."""
    return [from_nx(g) for g in nx.graph_atlas_g() if min_n <= g.number_of_nodes() <= max_n]


@pytest.fixture(scope="session")
def atlas7() -> list[Graph]:
    return atlas(7)


K3 = Graph.complete(3)
K4 = Graph.complete(4)
P3 = Graph(3, [(0, 1), (1, 2)])
C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
