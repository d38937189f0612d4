import networkx as nx
import pytest

from ising_lab.generators import (
    FamilySpec,
    connected_graphs,
    cube,
    family_graphs,
    named_graphs,
    petersen,
    prism,
    random_regular,
    theta,
    wheel,
)
from ising_lab.graph import girth, is_connected, max_degree


# OEIS A002905: connected graphs by number of edges
@pytest.mark.parametrize("m, count", [(0, 1), (1, 1), (2, 1), (3, 3), (4, 5), (5, 12), (6, 30), (7, 79)])
def test_connected_graph_counts_by_edges(m, count):
    assert sum(1 for g in connected_graphs(max_edges=7) if g.m == m) == count


# OEIS A001349: connected graphs on n vertices
@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_connected_graph_counts_by_vertices(n, count):
    assert sum(1 for g in connected_graphs(max_vertices=6) if g.n == n) == count


def test_connected_graphs_are_pairwise_non_isomorphic():
    graphs = [g for g in connected_graphs(max_vertices=5)]
    nxg = []
    for g in graphs:
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edge_pairs())
        nxg.append(h)
    for i in range(len(nxg)):
        for j in range(i + 1, len(nxg)):
            assert not nx.is_isomorphic(nxg[i], nxg[j])


def test_degree_bound_respected():
    assert all(max_degree(g) <= 3 for g in connected_graphs(max_vertices=7, max_degree=3))


def test_needs_a_bound():
    with pytest.raises(ValueError):
        connected_graphs()


@pytest.mark.parametrize("d, n", [(3, 10), (3, 16), (4, 9), (5, 12)])
def test_random_regular(d, n):
    g = random_regular(d, n, seed=5)
    assert g.is_simple and all(g.degree(v) == d for v in range(g.n))
    assert g == random_regular(d, n, seed=5)


def test_random_regular_parity():
    with pytest.raises(ValueError):
        random_regular(3, 7, seed=0)


def test_named_families():
    assert girth(petersen()) == 5 and max_degree(petersen()) == 3
    assert (cube().n, cube().m, girth(cube())) == (8, 12, 4)
    assert (prism(5).m, wheel(5).m) == (15, 10)
    t = theta(1, 3, 4)
    assert (t.n, t.m, girth(t)) == (7, 8, 4)
    disconnected = [name for name, g in named_graphs().items() if not is_connected(g)]
    assert disconnected == ["2C3"]


def test_family_descriptors():
    cycles = list(family_graphs(FamilySpec("cycles", {"n_min": 3, "n_max": 6})))
    assert [d for d, _, _ in cycles] == ["cycle:3", "cycle:4", "cycle:5", "cycle:6"]
    rr = list(family_graphs(FamilySpec("random-regular", {"d": 3, "sizes": [8, 10], "count": 4, "seed": 1})))
    assert [g.n for _, g, _ in rr] == [8, 10, 8, 10]
    assert all(s is not None for _, _, s in rr)
    with pytest.raises(ValueError):
        list(family_graphs(FamilySpec("nope")))
    with pytest.raises(ValueError):
        list(family_graphs(FamilySpec("complete", {"delta": 3, "n_max": 6})))
