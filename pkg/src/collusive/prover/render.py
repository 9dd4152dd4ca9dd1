"""Text and LaTeX (bussproofs) rendering of derivations."""

from __future__ import annotations

from ..formula import And, Atom, Bottom, BoxB, BoxF, DiaB, DiaF, Formula, Not, Or
from .sequent import DISPLAY_NAMES, Derivation, RelAtom, Sequent, item_key

__all__ = ["render_derivation", "render_text", "render_latex", "formula_latex", "sequent_latex"]


def _label(node: Derivation) -> str:
    name = DISPLAY_NAMES.get(node.rule, node.rule)
    if node.rule in ("total", "surj", "collusive", "refl", "symm"):
        return f"{name}({node.params[0]})"
    if node.rule in ("nover", "cc"):
        return f"{name}({node.params[0]},{node.params[1]})"
    return name


def render_text(d: Derivation) -> str:
    """Conclusion first; each premise indented two spaces below its conclusion."""
    lines = []

    def walk(node, depth):
        lines.append(f"{'  ' * depth}{_label(node)}: {node.conclusion}")
        for premise in node.premises:
            walk(premise, depth + 1)

    walk(d, 0)
    return "\n".join(lines) + "\n"


def _rel_latex(rel: str) -> str:
    if rel.endswith(("+", "-")):
        return f"{rel[:-1]}^{{{rel[-1]}}}"
    return rel


_MODAL_LATEX = {
    BoxF: r"\Box^{\rightarrow}", BoxB: r"\Box^{\leftarrow}",
    DiaF: r"\Diamond^{\rightarrow}", DiaB: r"\Diamond^{\leftarrow}",
}


def formula_latex(phi: Formula, context: int = 0) -> str:
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Bottom):
        return r"\bot"
    if isinstance(phi, Not):
        return r"\neg " + formula_latex(phi.body, 4)
    if type(phi) in _MODAL_LATEX:
        return f"{_MODAL_LATEX[type(phi)]}_{{{_rel_latex(phi.rel)}}} " + formula_latex(phi.body, 4)
    if isinstance(phi, And):
        text, level = f"{formula_latex(phi.left, 3)} \\wedge {formula_latex(phi.right, 4)}", 3
    elif isinstance(phi, Or):
        text, level = f"{formula_latex(phi.left, 2)} \\vee {formula_latex(phi.right, 3)}", 2
    else:
        text, level = f"{formula_latex(phi.left, 2)} \\Rightarrow {formula_latex(phi.right, 1)}", 1
    return f"({text})" if context > level else text


def _item_latex(item) -> str:
    if isinstance(item, RelAtom):
        return f"{item.src} {_rel_latex(item.rel)} {item.dst}"
    return f"{item.label}{{:}}{formula_latex(item.formula)}"


def sequent_latex(seq: Sequent) -> str:
    left = ", ".join(_item_latex(i) for i in sorted(seq.gamma, key=item_key))
    right = ", ".join(_item_latex(i) for i in sorted(seq.delta, key=item_key))
    return f"{left} \\vdash {right}".strip()


_RULE_LATEX = {
    "I": r"\mathrm{I}", "botL": r"\bot_L", "andL": r"\wedge_L", "andR": r"\wedge_R",
    "orL": r"\vee_L", "orR": r"\vee_R", "impL": r"\Rightarrow_L", "impR": r"\Rightarrow_R",
    "notL": r"\neg_L", "notR": r"\neg_R",
    "boxfL": r"\Box^{\rightarrow}_L", "boxfR": r"\Box^{\rightarrow}_R",
    "boxbL": r"\Box^{\leftarrow}_L", "boxbR": r"\Box^{\leftarrow}_R",
    "diafL": r"\Diamond^{\rightarrow}_L", "diafR": r"\Diamond^{\rightarrow}_R",
    "diabL": r"\Diamond^{\leftarrow}_L", "diabR": r"\Diamond^{\leftarrow}_R",
}


def render_latex(d: Derivation) -> str:
    """bussproofs source; premises are emitted before their conclusion."""
    lines = [r"\begin{prooftree}"]
    inference = {0: r"\UnaryInfC", 1: r"\UnaryInfC", 2: r"\BinaryInfC", 3: r"\TrinaryInfC"}

    def walk(node):
        if not node.premises:
            lines.append(r"\AxiomC{}")
        for premise in node.premises:
            walk(premise)
        name = _RULE_LATEX.get(node.rule, r"\mathit{" + node.rule + "}")
        lines.append(f"\\RightLabel{{\\scriptsize ${name}$}}")
        lines.append(f"{inference[len(node.premises)]}{{${sequent_latex(node.conclusion)}$}}")

    walk(d)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines) + "\n"


def render_derivation(d: Derivation, format: str = "text") -> str:
    if format == "text":
        return render_text(d)
    if format == "latex":
        return render_latex(d)
    raise ValueError(f"unknown format {format!r}")
