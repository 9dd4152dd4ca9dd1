"""Labeled sequents, system configurations and derivation trees."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from ..errors import MalformedSequent, ParseError
from ..formula import Formula, parse_formula, relation_names, to_text

__all__ = [
    "LabeledFormula", "RelAtom", "Item", "Sequent", "RuleSpec", "SystemConfig",
    "Derivation", "parse_sequent", "parse_rules", "item_key", "item_text",
    "RELATIONAL_RULES", "DISPLAY_NAMES",
]


@dataclass(frozen=True)
class LabeledFormula:
    label: str
    formula: Formula


@dataclass(frozen=True)
class RelAtom:
    src: str
    rel: str
    dst: str


Item = Union[LabeledFormula, RelAtom]


def item_text(item: Item) -> str:
    if isinstance(item, RelAtom):
        return f"{item.src} {item.rel} {item.dst}"
    return f"{item.label}:{to_text(item.formula)}"


def item_key(item: Item):
    """Sort key: relational atoms first, then labeled formulas, each by label then text."""
    if isinstance(item, RelAtom):
        return (0, item.src, item.dst, item.rel)
    return (1, item.label, to_text(item.formula))


@dataclass(frozen=True)
class Sequent:
    gamma: frozenset = frozenset()
    delta: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "gamma", frozenset(self.gamma))
        object.__setattr__(self, "delta", frozenset(self.delta))

    def labels(self) -> set[str]:
        out = set()
        for item in self.gamma | self.delta:
            if isinstance(item, RelAtom):
                out.update((item.src, item.dst))
            else:
                out.add(item.label)
        return out

    def relation_names(self) -> set[str]:
        names = set()
        for item in self.gamma | self.delta:
            if isinstance(item, RelAtom):
                names.add(item.rel)
            else:
                names |= relation_names(item.formula)
        return names

    def add(self, left: Iterable[Item] = (), right: Iterable[Item] = ()) -> Sequent:
        return Sequent(self.gamma | set(left), self.delta | set(right))

    def __str__(self):
        left = ", ".join(item_text(i) for i in sorted(self.gamma, key=item_key))
        right = ", ".join(item_text(i) for i in sorted(self.delta, key=item_key))
        return f"{left} ⊢ {right}".strip()


_LABEL = r"[A-Za-z_][A-Za-z0-9_']*"
_LF_RE = re.compile(rf"^\s*({_LABEL})\s*:(.*)$", re.S)
_REL_RE = re.compile(rf"^\s*({_LABEL})\s+([A-Za-z_][A-Za-z0-9_]*[+-]?)\s+({_LABEL})\s*$")


def _parse_items(text: str) -> list[Item]:
    items = []
    if not text.strip():
        return items
    for chunk in text.split(","):
        m = _LF_RE.match(chunk)
        if m:
            try:
                items.append(LabeledFormula(m.group(1), parse_formula(m.group(2))))
            except ParseError as exc:
                raise MalformedSequent(f"bad formula in {chunk.strip()!r}: {exc}") from None
            continue
        m = _REL_RE.match(chunk)
        if m:
            items.append(RelAtom(m.group(1), m.group(2), m.group(3)))
            continue
        raise MalformedSequent(f"cannot read sequent item {chunk.strip()!r}")
    return items


def parse_sequent(text: str) -> Sequent:
    """Read ``[SEQ:] items |- items`` where an item is ``x : formula`` or ``x R y``.

    A bare labeled formula without ``|-`` is taken as a goal on the right.
    """
    body = text.strip()
    if body.startswith("SEQ:"):
        body = body[4:]
    if body.count("|-") > 1:
        raise MalformedSequent("more than one '|-'")
    if "|-" in body:
        left, right = body.split("|-")
    else:
        left, right = "", body
    if not right.strip() and not left.strip():
        raise MalformedSequent("empty sequent")
    return Sequent(frozenset(_parse_items(left)), frozenset(_parse_items(right)))


RELATIONAL_RULES = {"total": 1, "surj": 1, "collusive": 1, "refl": 1, "symm": 1, "nover": 2, "cc": 2}


@dataclass(frozen=True)
class RuleSpec:
    kind: str
    rels: tuple[str, ...]

    def __post_init__(self):
        arity = RELATIONAL_RULES.get(self.kind)
        if arity is None:
            raise ValueError(f"unknown relational rule {self.kind!r}")
        if len(self.rels) != arity:
            raise ValueError(f"rule {self.kind} takes {arity} relation name(s)")
        if arity == 2 and self.rels[0] == self.rels[1]:
            raise ValueError(f"rule {self.kind} needs two distinct relation names")

    def __str__(self):
        return ":".join((self.kind,) + self.rels)


def parse_rules(text: str) -> frozenset[RuleSpec]:
    """Parse ``refl:R+,symm:R+,nover:R+:R-`` style rule lists."""
    specs = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        kind, *rels = chunk.split(":")
        try:
            specs.add(RuleSpec(kind.strip(), tuple(r.strip() for r in rels)))
        except ValueError as exc:
            raise MalformedSequent(f"bad rule {chunk!r}: {exc}") from None
    return frozenset(specs)


@dataclass(frozen=True)
class SystemConfig:
    rules: frozenset = frozenset()
    max_fresh: int = 8
    max_depth: int = 64

    def __post_init__(self):
        rules = self.rules
        if isinstance(rules, str):
            rules = parse_rules(rules)
        object.__setattr__(self, "rules", frozenset(rules))
        if self.max_fresh < 1 or self.max_depth < 1:
            raise ValueError("budgets must be positive")

    def has(self, kind: str, *rels: str) -> bool:
        return RuleSpec(kind, tuple(rels)) in self.rules

    def of_kind(self, kind: str) -> list[tuple[str, ...]]:
        return sorted(spec.rels for spec in self.rules if spec.kind == kind)

    @property
    def relations(self) -> set[str]:
        return {r for spec in self.rules for r in spec.rels}

    def describe(self) -> str:
        return ",".join(sorted(str(s) for s in self.rules)) or "(none)"


DISPLAY_NAMES = {
    "I": "I", "botL": "⊥L",
    "andL": "∧L", "andR": "∧R", "orL": "∨L", "orR": "∨R",
    "impL": "⇒L", "impR": "⇒R", "notL": "¬L", "notR": "¬R",
    "boxfL": "□→L", "boxfR": "□→R", "boxbL": "□←L", "boxbR": "□←R",
    "diafL": "◇→L", "diafR": "◇→R", "diabL": "◇←L", "diabR": "◇←R",
    "total": "total", "surj": "surj", "collusive": "collusive", "refl": "refl",
    "symm": "symm", "nover": "nover", "cc": "cc",
}


@dataclass(frozen=True)
class Derivation:
    """An inference: rule name, conclusion, premise derivations, instantiation.

    ``principal`` is the active formula or atom; ``params`` holds the labels
    and relation names of the instance (see the kernel for each rule's layout).
    """

    rule: str
    conclusion: Sequent
    premises: tuple = ()
    principal: Item | None = None
    params: tuple = ()

    def nodes(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Derivation]]:
        yield path, self
        for i, premise in enumerate(self.premises):
            yield from premise.nodes(path + (i,))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def rule_sequence(self) -> list[str]:
        return [node.rule for _, node in self.nodes()]

    def at(self, path) -> Derivation:
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def replace(self, path, new: Derivation) -> Derivation:
        if not path:
            return new
        i, rest = path[0], path[1:]
        premises = list(self.premises)
        premises[i] = premises[i].replace(rest, new)
        return Derivation(self.rule, self.conclusion, tuple(premises), self.principal, self.params)


def goal_sequent(label: str, formula: Formula | str) -> Sequent:
    if isinstance(formula, str):
        formula = parse_formula(formula)
    return Sequent(frozenset(), frozenset({LabeledFormula(label, formula)}))
