"""Kripke semantics for the bidirectional modal language.

Formulas are evaluated to their *extension*, the bit mask of worlds where
they hold, so that one pass over the formula decides every world at once::

    <f R> S  =  union of in(y) for y in S        (some successor in S)
    [f R] S  =  complement of <f R> (complement of S)

and symmetrically with out-neighbourhoods for the backward modalities.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .balance import SignedFrame
from .errors import TooLarge, UnknownAtom, UnknownRelation
from .formula import (And, Atom, Bottom, BoxF, DiaB, DiaF, Formula, Implies, Not, Or,
                      atoms, parse_formula)
from .relations import CheckResult, Relation, Universe, bits

__all__ = [
    "KripkeModel",
    "UnknownAtomWarning",
    "multi_model",
    "extension",
    "evaluate",
    "compile_formula",
    "frame_validates",
    "frame_validates_C",
    "subsets_by_size",
    "AXIOM_C",
    "AXIOM_C_DUAL",
    "MAX_SWEEP_WORLDS",
]

AXIOM_C = parse_formula("<f R><b R>[f R] p -> [f R] p")
# the same scheme instantiated with a negated atom and simplified; a single
# true point refutes it on any non-collusive frame
AXIOM_C_DUAL = parse_formula("<f R> q -> [f R][b R]<f R> q")
MAX_SWEEP_WORLDS = 20


class UnknownAtomWarning(UserWarning):
    pass


@dataclass(frozen=True)
class KripkeModel:
    universe: Universe
    relations: Mapping[str, Relation]
    valuation: Mapping[str, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        for name, r in self.relations.items():
            if r.n != self.universe.size:
                raise ValueError(f"relation {name!r} lives on a universe of size {r.n}")
        clean = {}
        for atom, worlds in self.valuation.items():
            worlds = frozenset(worlds)
            if any(not 0 <= w < self.universe.size for w in worlds):
                raise ValueError(f"valuation of {atom!r} mentions a world outside the universe")
            clean[atom] = worlds
        object.__setattr__(self, "relations", dict(self.relations))
        object.__setattr__(self, "valuation", clean)

    def masks(self) -> dict[str, int]:
        return {atom: sum(1 << w for w in worlds) for atom, worlds in self.valuation.items()}


def multi_model(frame: SignedFrame, valuation: Mapping[str, frozenset[int]] | None = None) -> KripkeModel:
    """Model over a signed frame with relations named ``R+`` and ``R-``."""
    return KripkeModel(frame.universe, {"R+": frame.rplus, "R-": frame.rminus}, valuation or {})


def _diamond(via: tuple[int, ...], target: int) -> int:
    result = 0
    for y in bits(target):
        result |= via[y]
    return result


def compile_formula(phi: Formula, relations: Mapping[str, Relation], n: int,
                    strict: bool = False) -> Callable[[Mapping[str, int]], int]:
    """Turn ``phi`` into a function from atom masks to its extension mask."""
    full = (1 << n) - 1
    warned = set()

    def build(node):
        if isinstance(node, Atom):
            name = node.name

            def atom(val):
                mask = val.get(name)
                if mask is None:
                    if strict:
                        raise UnknownAtom(name)
                    if name not in warned:
                        warned.add(name)
                        warnings.warn(f"atom {name!r} has no valuation; treated as false",
                                      UnknownAtomWarning, stacklevel=4)
                    return 0
                return mask
            return atom
        if isinstance(node, Bottom):
            return lambda val: 0
        if isinstance(node, Not):
            body = build(node.body)
            return lambda val: full & ~body(val)
        if isinstance(node, (And, Or, Implies)):
            left, right = build(node.left), build(node.right)
            if isinstance(node, And):
                return lambda val: left(val) & right(val)
            if isinstance(node, Or):
                return lambda val: left(val) | right(val)
            return lambda val: (full & ~left(val)) | right(val)
        try:
            r = relations[node.rel]
        except KeyError:
            raise UnknownRelation(node.rel) from None
        body = build(node.body)
        # forward modalities look at successors, found through in-neighbourhoods
        via = r.inn if isinstance(node, (BoxF, DiaF)) else r.out
        if isinstance(node, (DiaF, DiaB)):
            return lambda val: _diamond(via, body(val))
        return lambda val: full & ~_diamond(via, full & ~body(val))

    return build(phi)


def extension(m: KripkeModel, phi: Formula, strict: bool = False) -> frozenset[int]:
    mask = compile_formula(phi, m.relations, m.universe.size, strict)(m.masks())
    return frozenset(bits(mask))


def evaluate(m: KripkeModel, world: int, phi: Formula, strict: bool = False) -> bool:
    if not 0 <= world < m.universe.size:
        raise IndexError(f"world {world} outside universe of size {m.universe.size}")
    mask = compile_formula(phi, m.relations, m.universe.size, strict)(m.masks())
    return bool(mask >> world & 1)


def subsets_by_size(n: int) -> Iterator[int]:
    """All subsets of ``range(n)`` as masks: by size, then in combinations order."""
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            yield sum(1 << w for w in combo)


def frame_validates(relations: Mapping[str, Relation] | Relation, phi: Formula,
                    limit: int = MAX_SWEEP_WORLDS) -> CheckResult:
    """Is ``phi`` true at every world under every valuation of its atoms?

    Valuations are swept atom by atom (first atom slowest), each atom's set
    ranging over :func:`subsets_by_size`.  The witness is
    ``(valuation, world)`` for the first refutation met.
    """
    if isinstance(relations, Relation):
        relations = {"R": relations}
    n = next(iter(relations.values())).n
    names = atoms(phi)
    if n * max(1, len(names)) > limit:
        raise TooLarge(f"valuation sweep over {n * len(names)} bits exceeds limit {limit}")
    evaluate_ = compile_formula(phi, relations, n)
    full = (1 << n) - 1
    for masks in itertools.product(*(list(subsets_by_size(n)) for _ in names)):
        val = dict(zip(names, masks))
        truth = evaluate_(val)
        if truth != full:
            world = (full & ~truth & -(full & ~truth)).bit_length() - 1
            valuation = {a: frozenset(bits(m)) for a, m in val.items()}
            return CheckResult(False, (valuation, world))
    return CheckResult(True)


def frame_validates_C(r: Relation) -> CheckResult:
    """Frame validity of the collusiveness scheme, decided by single-atom sweeps.

    Sweeps the equivalent dual instance ``<f R> q -> [f R][b R]<f R> q``
    (the scheme with its atom replaced by ``~q``).  On failure the witness is
    ``(q_worlds, world)``; on a non-collusive frame this is a singleton
    ``{w}`` and a world ``z`` with ``z R w``, ``z R y``, ``x R y`` and not
    ``x R w``.
    """
    if r.n > MAX_SWEEP_WORLDS:
        raise TooLarge(f"universe of size {r.n} exceeds the sweep limit {MAX_SWEEP_WORLDS}")
    result = frame_validates({"R": r}, AXIOM_C_DUAL)
    if result:
        return result
    valuation, world = result.witness
    return CheckResult(False, (valuation["q"], world))
