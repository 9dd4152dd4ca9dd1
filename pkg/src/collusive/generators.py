"""Random and exhaustive generators for relations and signed frames.

All randomness flows through an explicit :class:`random.Random` so that
sweeps are reproducible from a seed.
"""

from __future__ import annotations

import random
from typing import Iterator

from .balance import SignedFrame
from .relations import Relation, Universe, bits

__all__ = [
    "random_relation",
    "random_collusive",
    "set_partitions",
    "planted_frame",
    "flip_pair",
    "uniform_cc_frame",
    "random_frame",
]


def random_relation(n: int, rng: random.Random, density: float | None = None) -> Relation:
    """Each pair independently with probability ``density`` (default: uniform over all relations)."""
    if density is None:
        return Relation.from_code(n, rng.getrandbits(n * n))
    out = tuple(sum(1 << y for y in range(n) if rng.random() < density) for _ in range(n))
    return Relation(Universe(n), out)


def random_collusive(n: int, rng: random.Random, p_empty: float = 0.2) -> Relation:
    """A random collusive relation: out-neighbourhoods are equal or disjoint.

    Targets are split into random classes and every element picks one class
    (or nothing, with probability ``p_empty``) as its out-neighbourhood.
    """
    labels = [rng.randrange(n) for _ in range(n)]
    classes: dict[int, int] = {}
    for y, c in enumerate(labels):
        classes[c] = classes.get(c, 0) | (1 << y)
    masks = list(classes.values())
    out = tuple(0 if rng.random() < p_empty else rng.choice(masks) for _ in range(n))
    return Relation(Universe(n), out)


def set_partitions(n: int) -> Iterator[list[int]]:
    """All partitions of ``range(n)`` as restricted-growth block labels."""
    if n == 0:
        yield []
        return

    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    yield from grow([0], 0)


def planted_frame(labels: list[int], keep: float = 1.0, rng: random.Random | None = None) -> SignedFrame:
    """Friends inside blocks, enemies across, every non-diagonal pair kept with probability ``keep``.

    ``keep=1`` gives the collectively connected frame of the partition.
    Dropping pairs is done symmetrically, so the frame stays an s.s.f.
    """
    n = len(labels)
    plus = [1 << x for x in range(n)]
    minus = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if keep < 1.0 and rng.random() >= keep:
                continue
            rows = plus if labels[x] == labels[y] else minus
            rows[x] |= 1 << y
            rows[y] |= 1 << x
    u = Universe(n)
    return SignedFrame(u, Relation(u, tuple(plus)), Relation(u, tuple(minus)))


def flip_pair(f: SignedFrame, x: int, y: int) -> SignedFrame:
    """Swap the sign of the pair ``{x, y}`` (an unrelated pair stays unrelated)."""
    plus, minus = list(f.rplus.out), list(f.rminus.out)
    for a, b in ((x, y), (y, x)):
        bit = 1 << b
        was_plus, was_minus = plus[a] & bit, minus[a] & bit
        plus[a] = (plus[a] & ~bit) | (bit if was_minus else 0)
        minus[a] = (minus[a] & ~bit) | (bit if was_plus else 0)
    return SignedFrame(f.universe, Relation(f.universe, tuple(plus)), Relation(f.universe, tuple(minus)))


def uniform_cc_frame(n: int, rng: random.Random, p_plus: float = 0.5) -> SignedFrame:
    """A collectively connected s.s.f. with each pair's sign drawn independently."""
    labels = [0] * n
    f = planted_frame(labels)
    for x in range(n):
        for y in range(x + 1, n):
            if rng.random() >= p_plus:
                f = flip_pair(f, x, y)
    return f


def random_frame(n: int, rng: random.Random, p_plus: float = 0.3, p_minus: float = 0.3,
                 symmetric_minus: bool = True) -> SignedFrame:
    """A valid frame, not necessarily c.c.; ``R-`` optionally one-directional."""
    plus = [1 << x for x in range(n)]
    minus = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            roll = rng.random()
            if roll < p_plus:
                plus[x] |= 1 << y
                plus[y] |= 1 << x
            elif roll < p_plus + p_minus:
                if symmetric_minus:
                    minus[x] |= 1 << y
                    minus[y] |= 1 << x
                else:
                    direction = rng.randrange(3)
                    if direction != 1:
                        minus[x] |= 1 << y
                    if direction != 0:
                        minus[y] |= 1 << x
    u = Universe(n)
    return SignedFrame(u, Relation(u, tuple(plus)), Relation(u, tuple(minus)))


def frame_pairs(f: SignedFrame) -> list[tuple[int, int]]:
    """Unordered related pairs ``x < y`` of a frame."""
    adj = [p | m for p, m in zip(f.positive_adjacency(), f.negative_adjacency())]
    return [(x, y) for x in range(f.n) for y in bits(adj[x]) if x < y]
