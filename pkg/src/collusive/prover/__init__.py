"""Labeled sequent calculus: proof search, derivation kernel and rendering."""

from .kernel import KernelResult, check_derivation
from .search import SearchResult, countermodel, prove, refutes, trim
from .sequent import (Derivation, LabeledFormula, RelAtom, RuleSpec, Sequent, SystemConfig,
                      goal_sequent, parse_rules, parse_sequent)

__all__ = [
    "Derivation", "KernelResult", "LabeledFormula", "RelAtom", "RuleSpec", "SearchResult",
    "Sequent", "SystemConfig", "check_derivation", "countermodel", "goal_sequent",
    "parse_rules", "parse_sequent", "prove", "refutes", "trim",
]
