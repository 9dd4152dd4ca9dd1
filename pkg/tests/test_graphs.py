import itertools
import random

import pytest

from collusive.graphs import Partition, UnionFind, components, parity_bfs, shortest_path, simple_cycles


def adjacency(n, edges):
    adj = [0] * n
    for x, y in edges:
        adj[x] |= 1 << y
        adj[y] |= 1 << x
    return adj


def test_partition_normalizes_and_validates():
    p = Partition(({2, 3}, {0}, {1}))
    assert p.blocks == (frozenset({0}), frozenset({1}), frozenset({2, 3}))
    assert p.covers(4) and not p.covers(5)
    assert p.block_of()[3] == 2
    with pytest.raises(ValueError):
        Partition(({0}, set()))
    with pytest.raises(ValueError):
        Partition(({0, 1}, {1}))


def test_parity_bfs_two_colours_even_cycle():
    adj = adjacency(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    side, cycle = parity_bfs(adj, adj)
    assert cycle is None and side == [0, 1, 0, 1]


def test_parity_bfs_reports_odd_cycle():
    adj = adjacency(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    side, cycle = parity_bfs(adj, adj)
    assert side is None
    assert sorted(cycle) == [0, 1, 2]


def test_odd_self_loop():
    adj = [1, 0]
    assert parity_bfs(adj, adj) == (None, [0])


def test_simple_cycles_of_k4():
    adj = adjacency(4, itertools.combinations(range(4), 2))
    cycles = list(simple_cycles(adj))
    # four triangles and three 4-cycles
    assert len(cycles) == 7
    assert len({frozenset(c) for c in cycles if len(c) == 3}) == 4


def test_simple_cycles_are_cycles():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(3, 7)
        adj = adjacency(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        seen = set()
        for cycle in simple_cycles(adj):
            assert len(set(cycle)) == len(cycle) >= 3
            for u, v in zip(cycle, cycle[1:] + cycle[:1]):
                assert adj[u] >> v & 1
            key = frozenset(frozenset(e) for e in zip(cycle, cycle[1:] + cycle[:1]))
            assert key not in seen
            seen.add(key)


def test_components_and_paths():
    adj = adjacency(5, [(0, 1), (1, 2), (3, 4)])
    assert components(adj) == [frozenset({0, 1, 2}), frozenset({3, 4})]
    assert shortest_path(adj, 0, 2) == [0, 1, 2]
    assert shortest_path(adj, 0, 4) is None


def test_union_find_parity():
    uf = UnionFind(4)
    assert uf.union(0, 1, 1)
    assert uf.union(1, 2, 1)
    assert uf.find(2) == (0, 0)
    assert not uf.union(0, 2, 1)
    assert uf.union(3, 2, 0)
    assert uf.find(3) == (0, 0)
