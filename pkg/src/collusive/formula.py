"""Formulas of the bidirectional multi-modal language, with a parser and printer.

Concrete syntax (ASCII)::

    formula  := disj [ '->' formula ]            right-associative
    disj     := conj { '|' conj }
    conj     := unary { '&' unary }
    unary    := '~' unary | modality unary | atom | 'false' | '(' formula ')'
    modality := '[f' NAME ']' | '[b' NAME ']' | '<f' NAME '>' | '<b' NAME '>'
              | 'box+' | 'dia+' | 'box-' | 'dia-'

``[f R]`` looks at ``R``-successors, ``[b R]`` at ``R``-predecessors, and the
angle-bracket forms are the existential duals.  ``box+`` abbreviates
``[f R+]``, ``dia-`` abbreviates ``<f R->`` and so on.  Atoms match
``[a-z][a-z0-9_]*``; relation names match ``[A-Za-z_][A-Za-z0-9_]*[+-]?``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

__all__ = [
    "Formula", "Atom", "Bottom", "Not", "And", "Or", "Implies",
    "BoxF", "BoxB", "DiaF", "DiaB", "MODALITIES",
    "parse_formula", "to_text", "atoms", "relation_names", "subformulas",
]


class Formula:
    """Base class; concrete nodes are frozen dataclasses."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return "Bottom()"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class BoxF(Formula):
    rel: str
    body: Formula


@dataclass(frozen=True)
class BoxB(Formula):
    rel: str
    body: Formula


@dataclass(frozen=True)
class DiaF(Formula):
    rel: str
    body: Formula


@dataclass(frozen=True)
class DiaB(Formula):
    rel: str
    body: Formula


MODALITIES = {BoxF: ("[", "f", "]"), BoxB: ("[", "b", "]"), DiaF: ("<", "f", ">"), DiaB: ("<", "b", ">")}
_BY_BRACKET = {(o, d): cls for cls, (o, d, _) in MODALITIES.items()}
_SUGAR = {"box+": (BoxF, "R+"), "dia+": (DiaF, "R+"), "box-": (BoxF, "R-"), "dia-": (DiaF, "R-")}

_WS = re.compile(r"\s*")
_ATOM = re.compile(r"[a-z][a-z0-9_]*")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*[+-]?")
_SUGAR_RE = re.compile(r"(box|dia)[+-](?!>)")
_UNARY_START = ("atom", "'false'", "'~'", "'('", "modality")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.pos)

    def eat(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str):
        if not self.eat(literal):
            self.fail(f"expected {literal!r}", [f"'{literal}'"])

    def fail(self, message, expected):
        raise ParseError(message, self.pos, expected)

    def parse(self) -> Formula:
        result = self.implication()
        self.skip()
        if self.pos != len(self.text):
            self.fail(f"unexpected {self.text[self.pos]!r}", ["'->'", "'|'", "'&'", "end of input"])
        return result

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.eat("->"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        result = self.conjunction()
        while self.eat("|"):
            result = Or(result, self.conjunction())
        return result

    def conjunction(self) -> Formula:
        result = self.unary()
        while self.eat("&"):
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        self.skip()
        text, pos = self.text, self.pos
        if pos >= len(text):
            self.fail("unexpected end of input", _UNARY_START)
        if self.eat("~"):
            return Not(self.unary())
        if self.eat("("):
            inner = self.implication()
            self.expect(")")
            return inner
        if text[pos] in "[<":
            return self.modality()
        m = _SUGAR_RE.match(text, pos)
        if m:
            self.pos = m.end()
            cls, rel = _SUGAR[m.group()]
            return cls(rel, self.unary())
        m = _ATOM.match(text, pos)
        if m:
            self.pos = m.end()
            word = m.group()
            return Bottom() if word == "false" else Atom(word)
        self.fail(f"unexpected {text[pos]!r}", _UNARY_START)

    def modality(self) -> Formula:
        opener = self.text[self.pos]
        self.pos += 1
        self.skip()
        direction = self.text[self.pos:self.pos + 1]
        if direction not in ("f", "b"):
            self.fail("expected a direction", ["'f'", "'b'"])
        self.pos += 1
        start = self.pos
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m or self.pos == start:
            self.fail("expected a relation name", ["relation name"])
        self.pos = m.end()
        closer = "]" if opener == "[" else ">"
        self.expect(closer)
        return _BY_BRACKET[(opener, direction)](m.group(), self.unary())


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


# precedence levels: implication 1, disjunction 2, conjunction 3, prefix 4
def _render(phi: Formula, context: int) -> str:
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Bottom):
        return "false"
    if isinstance(phi, Not):
        return "~" + _render(phi.body, 4)
    if type(phi) in MODALITIES:
        opener, direction, closer = MODALITIES[type(phi)]
        body = _render(phi.body, 4)
        gap = "" if type(phi.body) in MODALITIES else " "
        return f"{opener}{direction} {phi.rel}{closer}{gap}{body}"
    if isinstance(phi, And):
        text, level = f"{_render(phi.left, 3)} & {_render(phi.right, 4)}", 3
    elif isinstance(phi, Or):
        text, level = f"{_render(phi.left, 2)} | {_render(phi.right, 3)}", 2
    elif isinstance(phi, Implies):
        text, level = f"{_render(phi.left, 2)} -> {_render(phi.right, 1)}", 1
    else:
        raise TypeError(f"not a formula: {phi!r}")
    return f"({text})" if context > level else text


def to_text(phi: Formula) -> str:
    """Print with the fewest parentheses that parse back to the same tree."""
    return _render(phi, 0)


def subformulas(phi: Formula):
    yield phi
    for child in _children(phi):
        yield from subformulas(child)


def _children(phi):
    if isinstance(phi, (And, Or, Implies)):
        return (phi.left, phi.right)
    if isinstance(phi, Not) or type(phi) in MODALITIES:
        return (phi.body,)
    return ()


def atoms(phi: Formula) -> list[str]:
    """Atom names in order of first occurrence."""
    seen = {}
    for sub in subformulas(phi):
        if isinstance(sub, Atom):
            seen.setdefault(sub.name, None)
    return list(seen)


def relation_names(phi: Formula) -> set[str]:
    return {sub.rel for sub in subformulas(phi) if type(sub) in MODALITIES}
