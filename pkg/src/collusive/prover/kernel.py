"""Derivation checker.

Each node is re-derived from its conclusion, rule name, principal item and
parameters; the premises it lists must match the recomputed premises exactly
(as sets).  The kernel shares no code with the search, so a bug in the
search cannot vouch for its own output.

Parameter layouts:

=================  ==========================================
``boxfR`` etc.      ``(y,)`` fresh label (right box, left diamond)
``boxfL`` etc.      ``(y,)`` the related label (left box, right diamond)
``total``/``surj``  ``(R, x, y)`` with ``y`` fresh
``collusive``       ``(R, x, y, x2, z)``: from xRy, x2Ry, xRz add x2Rz
``refl``            ``(R, x)``
``symm``            ``(R, x, y)``: from xRy add yRx
``nover``/``cc``    ``(R, R2, x, y)``
=================  ==========================================
"""

from __future__ import annotations

from typing import NamedTuple

from ..formula import And, Atom, Bottom, BoxB, BoxF, DiaB, DiaF, Implies, Not, Or
from .sequent import Derivation, LabeledFormula, RelAtom, Sequent, SystemConfig

__all__ = ["KernelResult", "check_derivation"]


class KernelResult(NamedTuple):
    ok: bool
    path: tuple[int, ...] | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


class _Reject(Exception):
    pass


def _need(condition, message):
    if not condition:
        raise _Reject(message)


def _principal(node, side, kind):
    p = node.principal
    _need(isinstance(p, LabeledFormula) and isinstance(p.formula, kind),
          f"principal must be a labeled {kind.__name__} formula")
    _need(p in side, "principal formula is not in the conclusion")
    return p, p.label, p.formula


_CONNECTIVE_RULES = {
    "andL": And, "andR": And, "orL": Or, "orR": Or, "impL": Implies, "impR": Implies,
    "notL": Not, "notR": Not,
}
_MODAL_RULES = {
    "boxfR": (BoxF, "R", True), "boxbR": (BoxB, "R", False),
    "diafL": (DiaF, "L", True), "diabL": (DiaB, "L", False),
    "boxfL": (BoxF, "L", True), "boxbL": (BoxB, "L", False),
    "diafR": (DiaF, "R", True), "diabR": (DiaB, "R", False),
}
_FRESH = {"boxfR", "boxbR", "diafL", "diabL"}


def _expected(node: Derivation, cfg: SystemConfig) -> list[Sequent]:
    c = node.conclusion
    G, D = c.gamma, c.delta
    rule = node.rule
    labels = c.labels()

    if rule == "I":
        p = node.principal
        _need(p in G and p in D, "identity item must occur on both sides")
        _need(isinstance(p, RelAtom) or isinstance(p.formula, Atom), "identity needs an atom or relational atom")
        return []
    if rule == "botL":
        _principal(node, G, Bottom)
        return []

    if rule in _CONNECTIVE_RULES:
        left = rule.endswith("L")
        p, x, f = _principal(node, G if left else D, _CONNECTIVE_RULES[rule])
        G0, D0 = (G - {p}, D) if left else (G, D - {p})
        if rule == "notL":
            return [Sequent(G0, D0 | {LabeledFormula(x, f.body)})]
        if rule == "notR":
            return [Sequent(G0 | {LabeledFormula(x, f.body)}, D0)]
        a, b = LabeledFormula(x, f.left), LabeledFormula(x, f.right)
        if rule == "andL":
            return [Sequent(G0 | {a, b}, D0)]
        if rule == "andR":
            return [Sequent(G0, D0 | {a}), Sequent(G0, D0 | {b})]
        if rule == "orL":
            return [Sequent(G0 | {a}, D0), Sequent(G0 | {b}, D0)]
        if rule == "orR":
            return [Sequent(G0, D0 | {a, b})]
        if rule == "impL":
            return [Sequent(G0, D0 | {a}), Sequent(G0 | {b}, D0)]
        return [Sequent(G0 | {a}, D0 | {b})]  # impR

    if rule in _MODAL_RULES:
        kind, side, forward = _MODAL_RULES[rule]
        p, x, f = _principal(node, G if side == "L" else D, kind)
        _need(len(node.params) == 1, "modal rule needs exactly one label parameter")
        (y,) = node.params
        edge = RelAtom(x, f.rel, y) if forward else RelAtom(y, f.rel, x)
        body = LabeledFormula(y, f.body)
        if rule in _FRESH:
            _need(y not in labels, f"label {y} is not fresh")
            if side == "R":
                return [Sequent(G | {edge}, (D - {p}) | {body})]
            return [Sequent((G - {p}) | {edge, body}, D)]
        _need(edge in G, f"missing relational atom {edge.src} {edge.rel} {edge.dst}")
        if side == "L":
            return [Sequent(G | {body}, D)]
        return [Sequent(G, D | {body})]

    if rule in ("total", "surj", "collusive", "refl", "symm", "nover", "cc"):
        arity = 2 if rule in ("nover", "cc") else 1
        rels, args = node.params[:arity], node.params[arity:]
        _need(len(rels) == arity and all(isinstance(v, str) for v in node.params),
              f"{rule} needs {arity} relation name(s) followed by labels")
        _need(cfg.has(rule, *rels), f"rule {rule}:{':'.join(rels)} is not enabled")
        R = rels[0]
        if rule in ("total", "surj"):
            _need(len(args) == 2, "total/surj take (R, x, y)")
            x, y = args
            _need(x in labels, f"label {x} does not occur in the conclusion")
            _need(y not in labels, f"label {y} is not fresh")
            return [Sequent(G | {RelAtom(x, R, y) if rule == "total" else RelAtom(y, R, x)}, D)]
        if rule == "collusive":
            _need(len(args) == 4, "collusive takes (R, x, y, x2, z)")
            x, y, x2, z = args
            for a, b in ((x, y), (x2, y), (x, z)):
                _need(RelAtom(a, R, b) in G, f"missing relational atom {a} {R} {b}")
            return [Sequent(G | {RelAtom(x2, R, z)}, D)]
        if rule == "refl":
            _need(len(args) == 1, "refl takes (R, x)")
            (x,) = args
            _need(x in labels, f"label {x} does not occur in the conclusion")
            return [Sequent(G | {RelAtom(x, R, x)}, D)]
        if rule == "symm":
            _need(len(args) == 2, "symm takes (R, x, y)")
            x, y = args
            _need(RelAtom(x, R, y) in G, f"missing relational atom {x} {R} {y}")
            return [Sequent(G | {RelAtom(y, R, x)}, D)]
        _need(len(args) == 2, f"{rule} takes (R, R2, x, y)")
        x, y = args
        R2 = rels[1]
        if rule == "nover":
            _need(RelAtom(x, R, y) in G and RelAtom(x, R2, y) in G, "nover needs both atoms in the antecedent")
            return []
        _need(x in labels and y in labels, "cc labels must occur in the conclusion")
        return [Sequent(G | {RelAtom(x, R, y)}, D), Sequent(G | {RelAtom(x, R2, y)}, D)]

    raise _Reject(f"unknown rule {rule!r}")


def check_derivation(d: Derivation, cfg: SystemConfig) -> KernelResult:
    """Validate every inference; report the first failing node in pre-order."""
    for path, node in d.nodes():
        try:
            expected = _expected(node, cfg)
            _need(len(expected) == len(node.premises),
                  f"{node.rule} expects {len(expected)} premise(s), found {len(node.premises)}")
            for i, (want, premise) in enumerate(zip(expected, node.premises)):
                _need(premise.conclusion == want, f"premise {i} does not match the rule schema")
        except _Reject as exc:
            return KernelResult(False, path, f"{node.rule}: {exc}")
        except (ValueError, TypeError, AttributeError) as exc:
            # a malformed node (wrong parameter shapes) is a rejection, not a crash
            return KernelResult(False, path, f"{node.rule}: malformed inference ({exc})")
    return KernelResult(True)
