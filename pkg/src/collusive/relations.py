"""Finite binary relations and their first-order properties.

A relation on ``{0, ..., n-1}`` stores each element's out-neighbourhood as an
``int`` bit mask (bit ``y`` of ``out[x]`` is set iff ``x R y``).  Set algebra
on neighbourhoods then becomes integer arithmetic, which is what makes the
exhaustive sweeps over all 65,536 relations on four elements cheap.

Quadrangular properties are the eight universal sentences

    forall x, y, z, w.  A1(x, y) & A2(x, z) & A3(y, w)  ->  A4(z, w)

where each ``Ai(v, v')`` is either ``v R v'`` ("as written") or ``v' R v``
("reversed").  Variables range over the whole universe, so their values may
coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .errors import IndexOutOfRange

__all__ = [
    "Universe",
    "Relation",
    "CheckResult",
    "QuadPattern",
    "QuadWitness",
    "PATTERNS",
    "BASIC_PROPERTIES",
    "new_relation",
    "identity",
    "full",
    "inverse",
    "union",
    "intersection",
    "all_relations",
    "check_basic",
    "initial_elements",
    "check_quadrangular",
    "check_quadrangular_naive",
    "is_collusive_fast",
    "is_collusion",
    "is_equivalence",
]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Universe:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"universe size must be a positive integer, got {self.size!r}")
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != self.size:
                raise ValueError(f"expected {self.size} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def index(self, label: str) -> int:
        if self.labels is not None and label in self.labels:
            return self.labels.index(label)
        i = int(label)
        if not 0 <= i < self.size:
            raise IndexOutOfRange(f"element {i} outside universe of size {self.size}")
        return i

    def format(self, items: Iterable[int]) -> str:
        return "{" + ",".join(self.label(i) for i in sorted(items)) + "}"


def _as_universe(universe: Universe | int) -> Universe:
    return universe if isinstance(universe, Universe) else Universe(universe)


class CheckResult(NamedTuple):
    """Verdict of a universally quantified check plus a falsifying witness."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class Relation:
    universe: Universe
    out: tuple[int, ...]

    def __post_init__(self):
        n = self.universe.size
        if len(self.out) != n:
            raise ValueError(f"need {n} out-neighbourhoods, got {len(self.out)}")
        limit = 1 << n
        for x, mask in enumerate(self.out):
            if mask < 0 or mask >= limit:
                raise IndexOutOfRange(f"successor of {x} outside universe of size {n}")

    @classmethod
    def from_code(cls, universe: Universe | int, code: int) -> Relation:
        """Decode the relation whose pair ``(x, y)`` is bit ``x*n + y`` of ``code``."""
        universe = _as_universe(universe)
        n = universe.size
        row = (1 << n) - 1
        return cls(universe, tuple((code >> (x * n)) & row for x in range(n)))

    @property
    def n(self) -> int:
        return self.universe.size

    @cached_property
    def inn(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for x, mask in enumerate(self.out):
            for y in bits(mask):
                inn[y] |= 1 << x
        return tuple(inn)

    @cached_property
    def code(self) -> int:
        n = self.n
        return sum(mask << (x * n) for x, mask in enumerate(self.out))

    def has(self, x: int, y: int) -> bool:
        return bool(self.out[x] >> y & 1)

    def __contains__(self, pair) -> bool:
        x, y = pair
        return self.has(x, y)

    def successors(self, x: int) -> frozenset[int]:
        return frozenset(bits(self.out[x]))

    def predecessors(self, x: int) -> frozenset[int]:
        return frozenset(bits(self.inn[x]))

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, mask in enumerate(self.out) for y in bits(mask)]

    def __len__(self) -> int:
        return sum(mask.bit_count() for mask in self.out)

    def __iter__(self):
        return iter(self.pairs())

    def format(self) -> str:
        label = self.universe.label
        return "{" + ", ".join(f"({label(x)},{label(y)})" for x, y in self.pairs()) + "}"

    def __repr__(self):
        return f"Relation(n={self.n}, {self.format()})"


def new_relation(universe: Universe | int, edges: Iterable[tuple[int, int]]) -> Relation:
    universe = _as_universe(universe)
    n = universe.size
    out = [0] * n
    for x, y in edges:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexOutOfRange(f"edge ({x},{y}) outside universe of size {n}")
        out[x] |= 1 << y
    return Relation(universe, tuple(out))


def identity(universe: Universe | int) -> Relation:
    universe = _as_universe(universe)
    return Relation(universe, tuple(1 << x for x in range(universe.size)))


def full(universe: Universe | int) -> Relation:
    universe = _as_universe(universe)
    row = (1 << universe.size) - 1
    return Relation(universe, (row,) * universe.size)


def inverse(r: Relation) -> Relation:
    return Relation(r.universe, r.inn)


def union(r: Relation, s: Relation) -> Relation:
    return Relation(r.universe, tuple(a | b for a, b in zip(r.out, s.out)))


def intersection(r: Relation, s: Relation) -> Relation:
    return Relation(r.universe, tuple(a & b for a, b in zip(r.out, s.out)))


def all_relations(universe: Universe | int) -> Iterator[Relation]:
    """Every relation on the universe, in increasing order of ``code``."""
    universe = _as_universe(universe)
    for code in range(1 << (universe.size * universe.size)):
        yield Relation.from_code(universe, code)


# -- basic properties ---------------------------------------------------------

def _reflexive(r):
    for x in range(r.n):
        if not r.out[x] >> x & 1:
            return CheckResult(False, (x,))
    return CheckResult(True)


def _irreflexive(r):
    for x in range(r.n):
        if r.out[x] >> x & 1:
            return CheckResult(False, (x,))
    return CheckResult(True)


def _symmetric(r):
    inn = r.inn
    for x in range(r.n):
        bad = r.out[x] & ~inn[x]
        if bad:
            return CheckResult(False, (x, lowest(bad)))
    return CheckResult(True)


def _total(r):
    for x in range(r.n):
        if not r.out[x]:
            return CheckResult(False, (x,))
    return CheckResult(True)


def _surjective(r):
    for x in range(r.n):
        if not r.inn[x]:
            return CheckResult(False, (x,))
    return CheckResult(True)


def _transitive(r):
    out = r.out
    for x in range(r.n):
        for y in bits(out[x]):
            bad = out[y] & ~out[x]
            if bad:
                return CheckResult(False, (x, y, lowest(bad)))
    return CheckResult(True)


def _anti_transitive(r):
    out = r.out
    for x in range(r.n):
        for y in bits(out[x]):
            bad = out[y] & out[x]
            if bad:
                return CheckResult(False, (x, y, lowest(bad)))
    return CheckResult(True)


_BASIC = {
    "reflexive": _reflexive,
    "irreflexive": _irreflexive,
    "symmetric": _symmetric,
    "total": _total,
    "surjective": _surjective,
    "transitive": _transitive,
    "anti_transitive": _anti_transitive,
}

BASIC_PROPERTIES = tuple(_BASIC)


def check_basic(r: Relation, prop: str) -> CheckResult:
    """Check one of :data:`BASIC_PROPERTIES`.

    On failure the witness is the lexicographically least falsifying tuple:
    ``(x,)`` for the one-variable properties, ``(x, y)`` for symmetry and
    ``(x, y, z)`` for the two transitivity variants.
    """
    try:
        check = _BASIC[prop.replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown property {prop!r}; choose from {', '.join(BASIC_PROPERTIES)}") from None
    return check(r)


def is_equivalence(r: Relation) -> bool:
    return bool(_reflexive(r) and _symmetric(r) and _transitive(r))


def initial_elements(r: Relation) -> frozenset[int]:
    return frozenset(x for x in range(r.n) if not r.inn[x])


# -- quadrangular properties ----------------------------------------------------

class QuadWitness(NamedTuple):
    x: int
    y: int
    z: int
    w: int


@dataclass(frozen=True)
class QuadPattern:
    """Orientation flags for ``A1(x,y), A2(x,z), A3(y,w), A4(z,w)``.

    ``True`` means the atom is read as written (``v R v'``), ``False`` reversed.
    Patterns with a reversed first atom are variable renamings of one of the
    eight canonical ones; :meth:`normalized` performs that renaming.
    """

    a1: bool
    a2: bool
    a3: bool
    a4: bool

    @property
    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.a1, self.a2, self.a3, self.a4)

    def normalized(self) -> QuadPattern:
        if self.a1:
            return self
        # swap x<->y and z<->w: A2/A3 trade places and A4 flips direction
        return QuadPattern(True, self.a3, self.a2, not self.a4)

    @property
    def name(self) -> str:
        return _PATTERN_NAMES[self.normalized()]

    @classmethod
    def from_name(cls, name: str) -> QuadPattern:
        key = _ALIASES.get(name.lower(), name.upper())
        try:
            return PATTERNS[key]
        except KeyError:
            raise ValueError(f"unknown quadrangular pattern {name!r}") from None

    def formula(self) -> str:
        def atom(v, w, forward):
            return f"{v}R{w}" if forward else f"{w}R{v}"

        return (f"({atom('x', 'y', self.a1)} & {atom('x', 'z', self.a2)} & "
                f"{atom('y', 'w', self.a3)}) -> {atom('z', 'w', self.a4)}")

    def holds_at(self, r: Relation, x: int, y: int, z: int, w: int) -> bool:
        """Evaluate the implication on one assignment of the four variables."""

        def atom(v, u, forward):
            return r.has(v, u) if forward else r.has(u, v)

        antecedent = atom(x, y, self.a1) and atom(x, z, self.a2) and atom(y, w, self.a3)
        return not antecedent or atom(z, w, self.a4)


PATTERNS = {
    "Q1": QuadPattern(True, True, True, True),
    "Q2": QuadPattern(True, False, False, True),
    "Q3": QuadPattern(True, True, False, False),
    "Q4": QuadPattern(True, True, True, False),
    "Q5": QuadPattern(True, True, False, True),
    "Q6": QuadPattern(True, False, True, True),
    "Q7": QuadPattern(True, False, True, False),
    "Q8": QuadPattern(True, False, False, False),
}
_PATTERN_NAMES = {pattern: name for name, pattern in PATTERNS.items()}
_ALIASES = {
    "confluent": "Q1",
    "co-confluent": "Q2",
    "co_confluent": "Q2",
    "protective": "Q2",
    "collusive": "Q3",
}


def _pattern(pattern) -> QuadPattern:
    return pattern if isinstance(pattern, QuadPattern) else QuadPattern.from_name(pattern)


def check_quadrangular(r: Relation, pattern: QuadPattern | str) -> CheckResult:
    """Decide a quadrangular property with neighbourhood containment tests.

    For each ``(x, y)`` satisfying ``A1`` the remaining conditions read
    "every ``w`` with ``A3(y, w)`` satisfies ``A4(z, w)`` for every ``z`` with
    ``A2(x, z)``", i.e. one mask containment per ``z``.  The witness is the
    lexicographically least falsifying ``(x, y, z, w)``.
    """
    p = _pattern(pattern)
    out, inn = r.out, r.inn
    n1 = out if p.a1 else inn
    n2 = out if p.a2 else inn
    n3 = out if p.a3 else inn
    n4 = out if p.a4 else inn
    for x in range(r.n):
        zs = n2[x]
        if not zs:
            continue
        for y in bits(n1[x]):
            ws = n3[y]
            if not ws:
                continue
            for z in bits(zs):
                bad = ws & ~n4[z]
                if bad:
                    return CheckResult(False, QuadWitness(x, y, z, lowest(bad)))
    return CheckResult(True)


def check_quadrangular_naive(r: Relation, pattern: QuadPattern | str) -> CheckResult:
    """Literal O(n^4) sweep over all assignments; the reference oracle."""
    p = _pattern(pattern)
    n = r.n
    forward = [[r.has(v, u) for u in range(n)] for v in range(n)]
    backward = [[r.has(u, v) for u in range(n)] for v in range(n)]
    a1, a2, a3, a4 = (forward if f else backward for f in p.flags)
    for x, y, z, w in itertools.product(range(n), repeat=4):
        if a1[x][y] and a2[x][z] and a3[y][w] and not a4[z][w]:
            return CheckResult(False, QuadWitness(x, y, z, w))
    return CheckResult(True)


def is_collusive_fast(r: Relation) -> bool:
    """Collusive iff distinct nonempty out-neighbourhoods are pairwise disjoint."""
    seen = 0
    for mask in set(r.out):
        if mask:
            if seen & mask:
                return False
            seen |= mask
    return True


def is_collusion(r: Relation) -> bool:
    return is_collusive_fast(r) and bool(_total(r)) and bool(_surjective(r))
