"""Line-oriented text format for relations, signed frames and Kripke models.

::

    # comment
    universe 4
    labels x y z w          (optional)
    implicit-reflexive      (optional, frames only: add the diagonal of R+)
    rel R
    0 1
    2 1
    val q                   (models only: one world index per line)
    3

Indices are 0-based.  Output produced by :func:`dump` is canonical: ASCII,
LF line endings, single spaces, edges in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError
from .relations import Relation, Universe, bits, new_relation

__all__ = ["Document", "parse", "dump", "read_file"]


@dataclass
class Document:
    universe: Universe
    relations: dict[str, Relation] = field(default_factory=dict)
    valuation: dict[str, frozenset[int]] = field(default_factory=dict)
    implicit_reflexive: bool = False

    def relation(self, name: str | None = None) -> Relation:
        """The relation called ``name``, or the only one when ``name`` is None."""
        if name is None:
            if len(self.relations) != 1:
                raise FormatError(f"expected exactly one relation, found {len(self.relations)}")
            return next(iter(self.relations.values()))
        try:
            return self.relations[name]
        except KeyError:
            raise FormatError(f"no relation named {name!r}") from None


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", lineno) from None


def parse(text: str) -> Document:
    size = None
    labels = None
    implicit = False
    edges: dict[str, list[tuple[int, int]]] = {}
    worlds: dict[str, set[int]] = {}
    section = None  # ("rel" | "val", name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "universe":
            if size is not None:
                raise FormatError("duplicate universe line", lineno)
            if len(tokens) != 2:
                raise FormatError("expected 'universe N'", lineno)
            size = _int(tokens[1], lineno)
            if size < 1:
                raise FormatError("universe size must be positive", lineno)
            continue
        if size is None:
            raise FormatError("the first directive must be 'universe N'", lineno)
        if head == "labels":
            if labels is not None:
                raise FormatError("duplicate labels line", lineno)
            labels = tokens[1:]
            if len(labels) != size:
                raise FormatError(f"expected {size} labels, got {len(labels)}", lineno)
            if len(set(labels)) != size:
                raise FormatError("labels must be distinct", lineno)
        elif head == "implicit-reflexive":
            if len(tokens) != 1:
                raise FormatError("'implicit-reflexive' takes no arguments", lineno)
            implicit = True
        elif head in ("rel", "val"):
            if len(tokens) != 2:
                raise FormatError(f"expected '{head} NAME'", lineno)
            name = tokens[1]
            if name in edges or name in worlds:
                raise FormatError(f"duplicate section {name!r}", lineno)
            if head == "rel":
                edges[name] = []
            else:
                worlds[name] = set()
            section = (head, name)
        else:
            if section is None:
                raise FormatError(f"unexpected line {line!r} outside a rel/val section", lineno)
            kind, name = section
            arity = 2 if kind == "rel" else 1
            if len(tokens) != arity:
                what = "an edge 'i j'" if kind == "rel" else "a world index"
                raise FormatError(f"expected {what}, got {line!r}", lineno)
            values = [_int(t, lineno) for t in tokens]
            for v in values:
                if not 0 <= v < size:
                    raise FormatError(f"index {v} outside universe of size {size}", lineno)
            if kind == "rel":
                edges[name].append((values[0], values[1]))
            else:
                worlds[name].add(values[0])

    if size is None:
        raise FormatError("missing 'universe N' line")
    universe = Universe(size, tuple(labels) if labels else None)
    relations = {}
    for name, pairs in edges.items():
        if implicit and name == "R+":
            pairs = pairs + [(x, x) for x in range(size)]
        relations[name] = new_relation(universe, pairs)
    valuation = {name: frozenset(ws) for name, ws in worlds.items()}
    return Document(universe, relations, valuation, implicit)


def read_file(path) -> Document:
    return parse(Path(path).read_text(encoding="ascii"))


def dump(universe: Universe, relations: dict[str, Relation], valuation=None) -> str:
    lines = [f"universe {universe.size}"]
    if universe.labels is not None:
        lines.append("labels " + " ".join(universe.labels))
    for name, r in relations.items():
        lines.append(f"rel {name}")
        lines.extend(f"{x} {y}" for x, y in r.pairs())
    for name, ws in (valuation or {}).items():
        lines.append(f"val {name}")
        lines.extend(str(w) for w in sorted(ws))
    return "\n".join(lines) + "\n"


def dump_relation(r: Relation, name: str = "R") -> str:
    return dump(r.universe, {name: r})


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))
