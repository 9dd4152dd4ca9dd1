"""Signed frames and the equivalent characterizations of (weak) balance.

A frame pairs a friendship relation ``R+`` with an enmity relation ``R-``.
Balance can be decided four ways: by closure conditions on triples, by a
partition into antagonistic blocks, by the signs along simple cycles, and by
collusiveness of ``R+`` (and ``R-``).  On collectively connected symmetric
frames the four verdicts coincide; :func:`analyze` computes them all so the
agreement can be checked.

For cycles and triads the frame is read as an undirected signed graph: the
pair ``{x, y}`` is positive when ``x R+ y`` and negative when ``x R- y`` or
``y R- x``.  Valid frames never give a pair both signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidFrame, NotSSF, PartitionIncompatible, PreconditionFailed, TooLargeForBruteForce
from .graphs import Partition, UnionFind, components, parity_bfs, shortest_path, simple_cycles
from .relations import CheckResult, Relation, Universe, bits, check_basic, is_collusive_fast, lowest

__all__ = [
    "SignedFrame",
    "FrameDiagnostics",
    "TriadCensus",
    "BalanceReport",
    "validate_frame",
    "classify_triads",
    "is_locally_balanced",
    "is_locally_weak_balanced",
    "strong_balance_partition",
    "weak_balance_partition",
    "cycle_criterion",
    "complete_to_cc",
    "balance_via_collusion",
    "analyze",
    "BRUTEFORCE_LIMIT",
]

BRUTEFORCE_LIMIT = 9
STRONG, WEAK = "strong", "weak"


@dataclass(frozen=True)
class SignedFrame:
    universe: Universe
    rplus: Relation
    rminus: Relation

    def __post_init__(self):
        if self.rplus.n != self.universe.size or self.rminus.n != self.universe.size:
            raise ValueError("R+ and R- must live on the frame's universe")

    @classmethod
    def from_relations(cls, rplus: Relation, rminus: Relation) -> SignedFrame:
        return cls(rplus.universe, rplus, rminus)

    @property
    def n(self) -> int:
        return self.universe.size

    @property
    def ssf(self) -> bool:
        return bool(check_basic(self.rminus, "symmetric"))

    @property
    def cc(self) -> bool:
        full = (1 << self.n) - 1
        return all((p | m) == full for p, m in zip(self.rplus.out, self.rminus.out))

    def positive_adjacency(self) -> list[int]:
        """Undirected positive neighbours, diagonal removed."""
        return [(p | q) & ~(1 << x) for x, (p, q) in enumerate(zip(self.rplus.out, self.rplus.inn))]

    def negative_adjacency(self) -> list[int]:
        return [(m | q) & ~(1 << x) for x, (m, q) in enumerate(zip(self.rminus.out, self.rminus.inn))]

    def sign(self, x: int, y: int) -> str | None:
        if self.rplus.has(x, y):
            return "+"
        if self.rminus.has(x, y) or self.rminus.has(y, x):
            return "-"
        return None


@dataclass(frozen=True)
class FrameDiagnostics:
    violations: tuple[tuple[str, tuple], ...]
    ssf: bool
    cc: bool
    ssf_witness: tuple | None = None
    cc_witness: tuple | None = None

    @property
    def valid(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return "; ".join(f"{axiom} fails at {witness}" for axiom, witness in self.violations)


def validate_frame(f: SignedFrame) -> FrameDiagnostics:
    violations = []
    refl = check_basic(f.rplus, "reflexive")
    if not refl:
        violations.append(("reflexivity", refl.witness))
    symm = check_basic(f.rplus, "symmetric")
    if not symm:
        violations.append(("symmetry", symm.witness))
    for x in range(f.n):
        both = f.rplus.out[x] & f.rminus.out[x]
        if both:
            violations.append(("non-overlapping", (x, lowest(both))))
            break
    ssf = check_basic(f.rminus, "symmetric")
    cc_witness = None
    full = (1 << f.n) - 1
    for x in range(f.n):
        missing = full & ~(f.rplus.out[x] | f.rminus.out[x])
        if missing:
            cc_witness = (x, lowest(missing))
            break
    return FrameDiagnostics(tuple(violations), ssf.holds, cc_witness is None, ssf.witness, cc_witness)


def _require_valid(f: SignedFrame) -> FrameDiagnostics:
    diagnostics = validate_frame(f)
    if not diagnostics.valid:
        raise InvalidFrame(diagnostics)
    return diagnostics


class TriadCensus(NamedTuple):
    a: int = 0      # + + +
    b: int = 0      # - - +
    c: int = 0      # - - -
    d: int = 0      # + + -
    open: int = 0   # some pair unrelated

    @property
    def closed(self) -> int:
        return self.a + self.b + self.c + self.d


def classify_triads(f: SignedFrame) -> TriadCensus:
    """Count unordered triples of distinct elements by their sign pattern."""
    _require_valid(f)
    pos = f.positive_adjacency()
    neg = f.negative_adjacency()
    counts = [0, 0, 0, 0]  # by number of negative pairs
    open_ = 0
    for x in range(f.n):
        for y in range(x + 1, f.n):
            for z in range(y + 1, f.n):
                pairs = ((x, y), (x, z), (y, z))
                if not all((pos[u] | neg[u]) >> v & 1 for u, v in pairs):
                    open_ += 1
                    continue
                counts[sum(neg[u] >> v & 1 for u, v in pairs)] += 1
    return TriadCensus(a=counts[0], b=counts[2], c=counts[3], d=counts[1], open=open_)


def _local_check(f: SignedFrame, weak: bool) -> CheckResult:
    """Literal evaluation of the triple closure conditions.

    For fixed ``x, y`` each condition is a containment between rows:
    ``x R+ y`` demands ``R+(y) <= R+(x)`` and ``R-(y) <= R-(x)``;
    ``x R- y`` demands ``R+(y) <= R-(x)`` and, in the strong version,
    ``R-(y) <= R+(x)``.  The witness is the least ``(x, y, z)``.
    """
    plus, minus = f.rplus.out, f.rminus.out
    for x in range(f.n):
        for y in range(f.n):
            bad = 0
            if plus[x] >> y & 1:
                bad |= (plus[y] & ~plus[x]) | (minus[y] & ~minus[x])
            if minus[x] >> y & 1:
                bad |= plus[y] & ~minus[x]
                if not weak:
                    bad |= minus[y] & ~plus[x]
            if bad:
                return CheckResult(False, (x, y, lowest(bad)))
    return CheckResult(True)


def is_locally_balanced(f: SignedFrame) -> CheckResult:
    _require_valid(f)
    return _local_check(f, weak=False)


def is_locally_weak_balanced(f: SignedFrame) -> CheckResult:
    _require_valid(f)
    return _local_check(f, weak=True)


def strong_balance_partition(f: SignedFrame) -> tuple[frozenset[int], frozenset[int]] | None:
    """A bipartition keeping friends together and enemies apart, if any.

    ``S1`` holds the least element of every connected component, so ``S2``
    is empty when there are no enemies.
    """
    diagnostics = _require_valid(f)
    if not diagnostics.ssf:
        raise NotSSF(diagnostics.ssf_witness)
    uf = UnionFind(f.n)
    for x in range(f.n):
        for y in bits(f.rplus.out[x]):
            if x < y and not uf.union(x, y, 0):
                return None
        for y in bits(f.rminus.out[x]):
            if x < y and not uf.union(x, y, 1):
                return None
    s1, s2 = set(), set()
    for x in range(f.n):
        (s2 if uf.find(x)[1] else s1).add(x)
    return frozenset(s1), frozenset(s2)


def weak_balance_partition(f: SignedFrame) -> Partition | None:
    """Connected components of ``R+``, unless an ``R-`` edge lies inside one.

    ``R-`` need not be symmetric here.
    """
    _require_valid(f)
    partition = Partition(tuple(components(f.positive_adjacency())))
    block = partition.block_of()
    for x, y in f.rminus.pairs():
        if block[x] == block[y]:
            return None
    return partition


def _signed_graph(f: SignedFrame):
    pos = f.positive_adjacency()
    neg = f.negative_adjacency()
    return [p | m for p, m in zip(pos, neg)], neg


def _count_negative(cycle, neg) -> int:
    return sum(neg[u] >> v & 1 for u, v in zip(cycle, cycle[1:] + cycle[:1]))


def cycle_criterion(f: SignedFrame, mode: str = STRONG, method: str = "fast") -> CheckResult:
    """Strong: every simple cycle has an even number of negative edges.
    Weak: no simple cycle has exactly one negative edge.

    ``method="fast"`` decides via the partition characterizations and
    recovers a witness cycle from a search tree; ``"bruteforce"`` enumerates
    all simple cycles and is limited to ``BRUTEFORCE_LIMIT`` elements.
    The witness is a vertex list; the closing edge returns to its head.
    """
    if mode not in (STRONG, WEAK):
        raise ValueError(f"mode must be 'strong' or 'weak', got {mode!r}")
    _require_valid(f)
    adj, neg = _signed_graph(f)
    if method == "bruteforce":
        if f.n > BRUTEFORCE_LIMIT:
            raise TooLargeForBruteForce(f"brute-force cycle enumeration limited to n <= {BRUTEFORCE_LIMIT}")
        for cycle in simple_cycles(adj):
            k = _count_negative(cycle, neg)
            if (mode == STRONG and k % 2) or (mode == WEAK and k == 1):
                return CheckResult(False, tuple(cycle))
        return CheckResult(True)
    if method != "fast":
        raise ValueError(f"method must be 'fast' or 'bruteforce', got {method!r}")
    if mode == STRONG:
        _, cycle = parity_bfs(adj, neg)
        return CheckResult(True) if cycle is None else CheckResult(False, tuple(cycle))
    pos = f.positive_adjacency()
    block = Partition(tuple(components(pos))).block_of()
    for x in range(f.n):
        for y in bits(neg[x]):
            if block[x] == block[y]:
                path = shortest_path(pos, y, x)
                return CheckResult(False, tuple([x] + path[:-1]))
    return CheckResult(True)


def _as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    return Partition(tuple(block for block in p if block))


def complete_to_cc(f: SignedFrame, p) -> SignedFrame:
    """Extend ``f`` to the c.c. frame whose friends are exactly the block-mates."""
    _require_valid(f)
    partition = _as_partition(p)
    if not partition.covers(f.n):
        raise ValueError("partition must cover the universe")
    block = partition.block_of()
    for x, y in f.rplus.pairs():
        if block[x] != block[y]:
            raise PartitionIncompatible("positive", (x, y))
    for x, y in f.rminus.pairs():
        if block[x] == block[y]:
            raise PartitionIncompatible("negative", (x, y))
    full = (1 << f.n) - 1
    rows = [0] * f.n
    for b in partition.blocks:
        mask = sum(1 << x for x in b)
        for x in b:
            rows[x] = mask
    rplus = Relation(f.universe, tuple(rows))
    rminus = Relation(f.universe, tuple(full & ~row for row in rows))
    return SignedFrame(f.universe, rplus, rminus)


def balance_via_collusion(f: SignedFrame, mode: str = STRONG) -> bool:
    """Strong: ``R+`` and ``R-`` both collusive.  Weak: ``R+`` collusive.

    Only meaningful on collectively connected symmetric frames.
    """
    diagnostics = _require_valid(f)
    if not diagnostics.cc:
        raise PreconditionFailed("cc", "collusion criterion requires a c.c. s.s.f. (frame is not collectively connected)")
    if not diagnostics.ssf:
        raise PreconditionFailed("ssf", "collusion criterion requires a c.c. s.s.f. (R- is not symmetric)")
    if mode == STRONG:
        return is_collusive_fast(f.rplus) and is_collusive_fast(f.rminus)
    if mode == WEAK:
        return is_collusive_fast(f.rplus)
    raise ValueError(f"mode must be 'strong' or 'weak', got {mode!r}")


@dataclass(frozen=True)
class BalanceReport:
    """Every characterization of strong and weak balance for one frame.

    Fields are ``None`` where a method does not apply: the bipartition needs
    a symmetric ``R-``.  :meth:`strong_verdicts` and :meth:`weak_verdicts`
    return only the methods that the balance theorems relate for this frame
    (local and collusion criteria only on c.c. s.s.f. frames).
    """

    ssf: bool
    cc: bool
    locally_balanced: bool
    locally_weak_balanced: bool
    strong_partition: tuple[frozenset[int], frozenset[int]] | None
    weak_partition: Partition | None
    cycle_criterion_strong: bool
    cycle_criterion_weak: bool
    collusive_plus: bool
    collusive_minus: bool

    def strong_verdicts(self) -> dict[str, bool]:
        if not self.ssf:
            return {}
        verdicts = {"partition": self.strong_partition is not None, "cycle": self.cycle_criterion_strong}
        if self.cc:
            verdicts["local"] = self.locally_balanced
            verdicts["collusion"] = self.collusive_plus and self.collusive_minus
        return verdicts

    def weak_verdicts(self) -> dict[str, bool]:
        verdicts = {"partition": self.weak_partition is not None, "cycle": self.cycle_criterion_weak}
        if self.cc and self.ssf:
            verdicts["local"] = self.locally_weak_balanced
            verdicts["collusion"] = self.collusive_plus
        return verdicts

    @property
    def strong_agreement(self) -> bool:
        return len(set(self.strong_verdicts().values())) <= 1

    @property
    def weak_agreement(self) -> bool:
        return len(set(self.weak_verdicts().values())) <= 1

    @property
    def agreement(self) -> bool:
        return self.strong_agreement and self.weak_agreement


def analyze(f: SignedFrame) -> BalanceReport:
    diagnostics = _require_valid(f)
    strong_partition = strong_balance_partition(f) if diagnostics.ssf else None
    return BalanceReport(
        ssf=diagnostics.ssf,
        cc=diagnostics.cc,
        locally_balanced=_local_check(f, weak=False).holds,
        locally_weak_balanced=_local_check(f, weak=True).holds,
        strong_partition=strong_partition,
        weak_partition=weak_balance_partition(f),
        cycle_criterion_strong=cycle_criterion(f, STRONG).holds,
        cycle_criterion_weak=cycle_criterion(f, WEAK).holds,
        collusive_plus=is_collusive_fast(f.rplus),
        collusive_minus=is_collusive_fast(f.rminus),
    )
