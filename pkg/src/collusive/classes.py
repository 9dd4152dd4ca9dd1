"""Targeting classes, equi-targeting equivalences and the signed frames they induce.

For an irreflexive collusion ``R`` the out-neighbourhoods ``[x]_R`` partition
the universe and no class attacks itself.  Taking "same attackers" (left) or
"same targets" (right) as friendship and ``R`` as enmity then yields a
weakly balanced frame; when ``R`` is also symmetric the frame is balanced.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

from .balance import SignedFrame
from .errors import NotAnIrreflexiveCollusion, PreconditionFailed
from .graphs import Partition, parity_bfs
from .relations import Relation, bits, check_basic, is_collusive_fast, union, inverse

__all__ = [
    "CoalitionSide",
    "CycleResult",
    "targeting_class",
    "equi_relation",
    "bi_equi_relation",
    "collusion_partition",
    "induced_weak_frame",
    "induced_strong_frame",
    "has_odd_cycle",
]


class CoalitionSide(enum.Enum):
    LEFT = "left"    # equi-targeted: same attackers
    RIGHT = "right"  # equi-targeters: same targets


def targeting_class(r: Relation, x: int) -> frozenset[int]:
    return r.successors(x)


def _same_mask(r: Relation, masks) -> Relation:
    rows = []
    for x in range(r.n):
        rows.append(sum(1 << y for y in range(r.n) if masks[y] == masks[x]))
    return Relation(r.universe, tuple(rows))


def equi_relation(r: Relation, side: CoalitionSide | str) -> Relation:
    side = CoalitionSide(side)
    return _same_mask(r, r.inn if side is CoalitionSide.LEFT else r.out)


def bi_equi_relation(r: Relation) -> Relation:
    """Same attackers and same targets; equals either side when ``r`` is symmetric."""
    keys = list(zip(r.inn, r.out))
    return _same_mask(r, keys)


def _require_irreflexive_collusion(r: Relation) -> None:
    for prop in ("irreflexive", "total", "surjective"):
        result = check_basic(r, prop)
        if not result:
            raise NotAnIrreflexiveCollusion(prop, f"relation is not {prop} (witness {result.witness})")
    if not is_collusive_fast(r):
        raise NotAnIrreflexiveCollusion("collusive", "relation is not collusive")


def collusion_partition(r: Relation) -> Partition:
    """The distinct targeting classes of an irreflexive collusion."""
    _require_irreflexive_collusion(r)
    return Partition(tuple(frozenset(bits(mask)) for mask in set(r.out)))


def induced_weak_frame(r: Relation, side: CoalitionSide | str = CoalitionSide.LEFT,
                       symmetrize: bool = False) -> SignedFrame:
    """``<X, ~side, R>``, or ``<X, ~side, R u R^-1>`` when ``symmetrize`` is set."""
    _require_irreflexive_collusion(r)
    rminus = union(r, inverse(r)) if symmetrize else r
    return SignedFrame(r.universe, equi_relation(r, side), rminus)


def induced_strong_frame(r: Relation, strict: bool = False) -> SignedFrame:
    """``<X, ~lr, R>`` for a symmetric, irreflexive, collusive ``R``.

    With ``strict`` the relation must also be total and surjective, i.e. a
    collusion in the full sense.
    """
    required = ["symmetric", "irreflexive"]
    if strict:
        required += ["total", "surjective"]
    for prop in required:
        result = check_basic(r, prop)
        if not result:
            raise PreconditionFailed(prop, f"relation is not {prop} (witness {result.witness})")
    if not is_collusive_fast(r):
        raise PreconditionFailed("collusive", "relation is not collusive")
    return SignedFrame(r.universe, bi_equi_relation(r), r)


class CycleResult(NamedTuple):
    found: bool
    cycle: tuple[int, ...] | None = None

    def __bool__(self):
        return self.found


def has_odd_cycle(r: Relation) -> CycleResult:
    """Odd cycle in the undirected graph of ``r`` (a self-loop counts as length 1)."""
    adj = [o | i for o, i in zip(r.out, r.inn)]
    _, cycle = parity_bfs(adj, adj)
    return CycleResult(False) if cycle is None else CycleResult(True, tuple(cycle))
