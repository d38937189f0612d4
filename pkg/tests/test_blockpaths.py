import random

import pytest

from ising_lab.blockpaths import (
    block_paths_by_predicate,
    connected_subsets,
    decompose_even_set,
    enumerate_block_paths,
    eulerian_double_count_check,
    even_block_paths,
    is_block_path,
    verify_decomposition,
    walk_bound_check,
    walk_gf,
)
from ising_lab.errors import DomainError
from ising_lab.generators import bowtie, complete, cycle, path, petersen, theta
from ising_lab.graph import girth
from ising_lab.partition import conditional_even_sets, is_even

from corpus import connected_by_edges


def test_path_graph_block_paths():
    g = path(4)  # 0-1-2-3
    bps = enumerate_block_paths(g, 0, {3})
    assert [bp.size for bp in bps] == [3]
    assert bps[0].endpoints == (0, 3)
    # a U-vertex in the middle blocks the way
    assert enumerate_block_paths(g, 0, {2, 3}) == [enumerate_block_paths(g, 0, {2})[0]]


def test_cycle_block_paths():
    g = cycle(4)
    bps = enumerate_block_paths(g, 0, {2})
    sizes = sorted(bp.size for bp in bps)
    # the whole cycle, or one of two paths of length 2
    assert sizes == [2, 2, 4]
    assert [bp.size for bp in even_block_paths(g, 0, {2})] == [4]


def test_bowtie_chain_of_two_blocks():
    g = bowtie()  # triangles 0-1-2 and 2-3-4 sharing vertex 2
    bps = enumerate_block_paths(g, 0, {3})
    whole = [bp for bp in bps if bp.size == 6]
    assert len(whole) == 1 and whole[0].cut_sequence == (2,)


def test_argument_checks():
    with pytest.raises(DomainError):
        enumerate_block_paths(cycle(3), 0, {0})
    with pytest.raises(Exception):
        enumerate_block_paths(cycle(3), 0, {5})


def test_predicate_matches_enumeration_exhaustively_small():
    for g in connected_by_edges(6):
        for v in range(g.n):
            for u in range(g.n):
                if u != v:
                    got = sorted(bp.edge_set for bp in enumerate_block_paths(g, v, {u}))
                    assert got == sorted(block_paths_by_predicate(g, v, {u}))


def test_is_block_path_rejects_non_members():
    g = complete(4)
    assert not is_block_path(g, 0, 0, {1})
    assert is_block_path(g, 0b1, 0, {1}) == (g.endpoints[0] == (0, 1))


def test_connected_subsets_counts():
    # connected edge subsets of a triangle containing vertex 0: empty, 3 singles touching 0 (2), pairs (3), whole
    subs = list(connected_subsets(cycle(3), 0))
    assert len(subs) == 1 + 2 + 3 + 1


def test_decomposition_identity_on_random_multigraphs():
    rng = random.Random(12)
    from ising_lab.generators import random_multigraph

    for _ in range(60):
        g = random_multigraph(rng, 5, 7)
        if g.n < 2:
            continue
        v = rng.randrange(g.n)
        others = [u for u in range(g.n) if u != v]
        U = set(rng.sample(others, min(len(others), rng.randint(1, 2))))
        assert verify_decomposition(g, U, v).equal


def test_unique_decomposition_of_each_even_set():
    g = theta(2, 2, 3)
    for v, U in [(0, {1}), (2, {0, 5}), (3, {1})]:
        inside = set(conditional_even_sets(g, U))
        plus_v = set(conditional_even_sets(g, U | {v}))
        for F in inside:
            pieces = decompose_even_set(g, F, U, v)
            assert len(pieces) == (0 if F in plus_v else 1)


def brute_trails(g, v):
    counts = [0] * (g.m + 1)
    arcs = [(a, b, e) for a, b, e in g.edges] + [(b, a, e) for a, b, e in g.edges if a != b]

    def go(at, used, k):
        for a, b, e in arcs:
            if a == at and not (used >> e) & 1:
                if b == v:
                    counts[k + 1] += 1
                go(b, used | (1 << e), k + 1)

    go(v, 0, 0)
    return counts


@pytest.mark.parametrize("g", [cycle(3), cycle(5), complete(4), bowtie(), theta(1, 2, 3)])
def test_walk_gf_against_brute_force(g):
    for v in range(g.n):
        assert list(walk_gf(g, v).counts) == brute_trails(g, v)


def test_cycle_trails():
    # C_n: one closed trail each way
    assert walk_gf(cycle(6), 0).counts == (0, 0, 0, 0, 0, 0, 2)


def test_walk_bound_on_petersen():
    g = petersen()
    for c in (0.3, 0.6, 0.9):
        rep = walk_bound_check(g, 0, c, 3, girth(g))
        assert rep.holds and rep.slack >= 0


def test_walk_bound_argument_checks():
    with pytest.raises(DomainError):
        walk_bound_check(cycle(4), 0, 1.0, 3, 4)
    with pytest.raises(DomainError):
        walk_bound_check(complete(5), 0, 0.5, 3, 3)
    with pytest.raises(DomainError):
        walk_bound_check(cycle(4), 0, 0.5, 3, 5)


def test_eulerian_histogram():
    for g in (petersen(), complete(4), bowtie()):
        for v in range(g.n):
            for u in range(g.n):
                if u != v:
                    assert eulerian_double_count_check(g, v, {u}).holds


def test_even_block_paths_are_even():
    g = complete(5)
    for bp in even_block_paths(g, 0, {1, 2}):
        assert is_even(g, bp.edge_set)
