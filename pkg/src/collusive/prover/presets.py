"""Named goals with the rule sets under which they are expected to be provable."""

from __future__ import annotations

from dataclasses import dataclass

from .sequent import Sequent, SystemConfig, goal_sequent, parse_rules

__all__ = ["Preset", "PRESETS", "get_preset", "SIGNED_RULES"]

SIGNED_RULES = "refl:R+,symm:R+,symm:R-,collusive:R+,nover:R+:R-,cc:R+:R-"
W1 = "dia+ dia+ p -> dia+ p"
W2 = "(dia+ dia- p | dia- dia+ p) -> dia- p"


@dataclass(frozen=True)
class Preset:
    name: str
    formula: str
    rules: str
    note: str

    def goal(self) -> Sequent:
        return goal_sequent("x", self.formula)

    def config(self, rules: str | None = None, **budgets) -> SystemConfig:
        return SystemConfig(parse_rules(self.rules if rules is None else rules), **budgets)


PRESETS = {p.name: p for p in (
    Preset("axiom-C", "<f R><b R>[f R] p -> [f R] p", "collusive:R",
           "collusive frames validate this scheme"),
    Preset("axiom-4", "[f R] p -> [f R][f R] p", "refl:R,collusive:R",
           "reflexive collusive relations are transitive"),
    Preset("axiom-B", "p -> [f R]<f R> p", "refl:R,collusive:R",
           "reflexive collusive relations are symmetric"),
    Preset("axiom-W1", W1, SIGNED_RULES,
           "first weak-balance conjunct read as transitivity of R+"),
    Preset("axiom-W1-literal", "dia+ p & dia+ p -> dia+ p", SIGNED_RULES,
           "first weak-balance conjunct read as a conjunction of two diamonds"),
    Preset("axiom-W2", W2, SIGNED_RULES,
           "second weak-balance conjunct: a friend's enemy or an enemy's friend is an enemy"),
    Preset("axiom-W", f"({W1}) & ({W2})", SIGNED_RULES,
           "both weak-balance conjuncts, first one read as transitivity"),
    Preset("balance-B", "dia- dia- p -> dia+ p", SIGNED_RULES + ",collusive:R-",
           "the enemy of an enemy is a friend, with R- collusive as well"),
    Preset("axiom-C-plus", "<f R+><b R+>[f R+] p -> [f R+] p",
           "refl:R+,symm:R+,symm:R-,nover:R+:R-,cc:R+:R-",
           "exploratory: collusiveness of R+ without its own rule; not expected to be provable"),
)}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
