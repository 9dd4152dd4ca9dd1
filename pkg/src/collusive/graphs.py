"""Small undirected-graph utilities over bit-mask adjacency lists.

Vertices are ``0..n-1``; ``adj[v]`` is the bit mask of neighbours.  Edges may
carry a parity bit (``odd[v]`` marks the neighbours joined to ``v`` by an
odd edge), which covers both plain bipartiteness (every edge odd) and signed
balance (negative edges odd).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .relations import bits

__all__ = ["Partition", "parity_bfs", "simple_cycles", "components", "shortest_path", "UnionFind"]


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks, kept sorted by their least element."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = [frozenset(b) for b in self.blocks]
        seen = set()
        for block in blocks:
            if not block:
                raise ValueError("partition blocks must be nonempty")
            if seen & block:
                raise ValueError("partition blocks must be disjoint")
            seen |= block
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=min)))

    def covers(self, n: int) -> bool:
        return set().union(*self.blocks) == set(range(n))

    def block_of(self) -> dict[int, int]:
        return {x: i for i, block in enumerate(self.blocks) for x in block}

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def parity_bfs(adj: Sequence[int], odd: Sequence[int]) -> tuple[list[int] | None, list[int] | None]:
    """Two-colour the graph so that odd edges cross and even edges stay.

    Returns ``(side, None)`` on success, with the least vertex of each
    component on side 0.  Otherwise returns ``(None, cycle)`` where ``cycle``
    is a simple cycle with an odd number of odd edges, built from the two
    BFS tree paths to the lowest common ancestor plus the conflicting edge.
    A self-loop marked odd is reported as the cycle ``[v]``.
    """
    n = len(adj)
    side = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    for root in range(n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in bits(adj[u]):
                want = side[u] ^ (odd[u] >> v & 1)
                if side[v] == -1:
                    side[v] = want
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif side[v] != want:
                    return None, _tree_cycle(u, v, parent, depth)
    return side, None


def _tree_cycle(u, v, parent, depth):
    if u == v:
        return [u]
    left, right = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the ancestor; right also does, so drop its copy
    return left + right[-2::-1]


def simple_cycles(adj: Sequence[int]) -> Iterator[list[int]]:
    """Enumerate every simple cycle of length >= 3 exactly once.

    Each cycle is rooted at its least vertex and traversed in the direction
    whose second vertex is smaller than its last.  Exponential; meant as an
    oracle on small graphs.
    """
    n = len(adj)
    for start in range(n):
        allowed = ~((1 << (start + 1)) - 1)  # vertices greater than start
        path = [start]
        on_path = 1 << start

        def extend(u):
            nonlocal on_path
            for v in bits(adj[u] & allowed & ~on_path):
                path.append(v)
                on_path |= 1 << v
                if len(path) >= 3 and adj[v] >> start & 1 and path[1] < v:
                    yield list(path)
                yield from extend(v)
                path.pop()
                on_path &= ~(1 << v)

        yield from extend(start)


def components(adj: Sequence[int]) -> list[frozenset[int]]:
    n = len(adj)
    seen = 0
    out = []
    for root in range(n):
        if seen >> root & 1:
            continue
        comp = 1 << root
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(bits(comp)))
    return out


def shortest_path(adj: Sequence[int], source: int, target: int) -> list[int] | None:
    parent = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            path = []
            while u is not None:
                path.append(u)
                u = parent[u]
            return path[::-1]
        for v in bits(adj[u]):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    return None


class UnionFind:
    """Union-find that tracks each element's parity relative to its root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        parity = 0
        root = x
        while self.parent[root] != root:
            parity ^= self.parity[root]
            root = self.parent[root]
        # path compression
        p = self.find_parity_compress(x, root, parity)
        return root, p

    def find_parity_compress(self, x, root, parity):
        acc = parity
        while self.parent[x] != x:
            nxt = self.parent[x]
            step = self.parity[x]
            self.parent[x] = root
            self.parity[x] = acc
            acc ^= step
            x = nxt
        return parity

    def union(self, x: int, y: int, odd: int) -> bool:
        """Record ``parity(x) ^ parity(y) == odd``; False on contradiction."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == odd
        if ry < rx:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ odd
        return True
