import random

import pytest

from collusive.errors import MalformedSequent
from collusive.formula import parse_formula
from collusive.modal import evaluate
from collusive.prover import (Derivation, LabeledFormula, RelAtom, SystemConfig, check_derivation,
                              countermodel, goal_sequent, parse_rules, parse_sequent, prove, refutes, trim)
from collusive.prover.presets import PRESETS, get_preset
from collusive.prover.render import render_derivation, render_text

from conftest import GOLDEN
from mutations import mutations, rename_label

PROVABLE = [name for name in PRESETS if name != "axiom-C-plus"]


def test_parse_sequent():
    seq = parse_sequent("SEQ: x R y, x : <f R> p |- y : p, x' : q")
    assert RelAtom("x", "R", "y") in seq.gamma
    assert LabeledFormula("x", parse_formula("<f R> p")) in seq.gamma
    assert seq.labels() == {"x", "y", "x'"}
    assert str(parse_sequent("x : p |- x : p")) == "x:p ⊢ x:p"
    assert parse_sequent("x : p") == goal_sequent("x", "p")
    with pytest.raises(MalformedSequent):
        parse_sequent("x : p |- y : q |- z : r")
    with pytest.raises(MalformedSequent):
        parse_sequent("x |- x : p")


def test_parse_rules():
    rules = parse_rules("refl:R+, cc:R+:R-")
    assert {str(r) for r in rules} == {"refl:R+", "cc:R+:R-"}
    with pytest.raises(ValueError):
        parse_rules("cc:R")
    with pytest.raises(ValueError):
        parse_rules("magic:R")
    assert SystemConfig("symm:S").relations == {"S"}


@pytest.mark.parametrize("name", PROVABLE)
def test_presets_prove_with_valid_derivations(name):
    preset = get_preset(name)
    cfg = preset.config()
    result = prove(preset.goal(), cfg)
    assert result.proved, result.status
    assert check_derivation(result.derivation, cfg)
    assert result.derivation.conclusion == preset.goal()


def test_axiom_c_derivation_shape():
    p = get_preset("axiom-C")
    d = prove(p.goal(), p.config()).derivation
    assert d.rule_sequence() == ["impR", "boxfR", "diafL", "diabL", "collusive", "boxfL", "I"]
    assert render_derivation(d, "text") == (GOLDEN / "axiom_C.txt").read_text(encoding="utf-8")
    assert render_derivation(d, "latex") == (GOLDEN / "axiom_C.tex").read_text(encoding="utf-8")


def test_axioms_4_and_b_shapes():
    four = prove(get_preset("axiom-4").goal(), get_preset("axiom-4").config()).derivation
    assert four.rule_sequence() == ["impR", "boxfR", "refl", "boxfR", "collusive", "boxfL", "I"]
    b = prove(get_preset("axiom-B").goal(), get_preset("axiom-B").config()).derivation
    assert b.rule_sequence() == ["impR", "refl", "boxfR", "refl", "collusive", "diafR", "I"]


def test_case_split_premise_order_follows_rule_declaration():
    w2 = get_preset("axiom-W2")
    plus_first = prove(w2.goal(), w2.config()).derivation
    minus_first = prove(w2.goal(), w2.config(w2.rules.replace("cc:R+:R-", "cc:R-:R+"))).derivation

    def leftmost_after_cc(d):
        node = next(node for _, node in d.nodes() if node.rule == "cc")
        return [n.rule for _, n in node.premises[0].nodes()]

    assert leftmost_after_cc(plus_first)[-1] == "nover"
    assert leftmost_after_cc(minus_first)[-2:] == ["diafR", "I"]


def test_non_overlap_is_needed_for_w2():
    w2 = get_preset("axiom-W2")
    result = prove(w2.goal(), w2.config("refl:R+,symm:R+,symm:R-,collusive:R+,cc:R+:R-"))
    assert not result.proved


def test_axiom_c_needs_its_rule():
    result = prove(get_preset("axiom-C").goal(), SystemConfig())
    assert result.status == "saturated"
    model, labels = countermodel(result.countersequent, {"R"})
    assert refutes(model, labels, result.countersequent)
    # the extracted model refutes the goal formula at x
    assert not evaluate(model, labels.index("x"), parse_formula("<f R><b R>[f R] p -> [f R] p"))


def test_exploratory_preset_saturates():
    p = get_preset("axiom-C-plus")
    assert prove(p.goal(), p.config()).status == "saturated"


def test_budget_outcome():
    cfg = SystemConfig("total:R", max_fresh=2)
    result = prove(parse_sequent("x : [f R] p |- x : p"), cfg)
    assert result.status == "budget"
    assert result.stats.budget_reason == "fresh labels"
    assert result.stats.most_fresh == 2


def test_unknown_relation_in_goal():
    with pytest.raises(MalformedSequent):
        prove(goal_sequent("x", "<f S> p -> <f S> p"), SystemConfig("refl:R"))


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("name", ["axiom-C", "axiom-W", "balance-B"])
def test_shuffled_rule_order(name, seed):
    p = get_preset(name)
    cfg = p.config()
    result = prove(p.goal(), cfg, rng=random.Random(seed))
    assert result.proved
    assert check_derivation(result.derivation, cfg)


def test_pruning_keeps_validity_and_shrinks():
    p = get_preset("axiom-W")
    cfg = p.config()
    full = prove(p.goal(), cfg, prune=False).derivation
    small = prove(p.goal(), cfg).derivation
    assert check_derivation(full, cfg) and check_derivation(small, cfg)
    assert small.size() <= full.size()
    assert check_derivation(trim(full), cfg)


def test_kernel_rejects_every_single_mutation():
    p = get_preset("axiom-C")
    cfg = p.config()
    d = prove(p.goal(), cfg).derivation
    accepted = [desc for desc, m in mutations(d) if check_derivation(m, cfg)]
    assert accepted == []


def test_kernel_reports_path():
    p = get_preset("axiom-C")
    cfg = p.config()
    d = prove(p.goal(), cfg).derivation
    path, node = list(d.nodes())[2]
    bad = d.replace(path, rename_label(node, node.params[0], "x"))
    result = check_derivation(bad, cfg)
    assert not result and result.path == path and "fresh" in result.message


def test_kernel_requires_enabled_rule():
    p = get_preset("axiom-C")
    d = prove(p.goal(), p.config()).derivation
    assert not check_derivation(d, SystemConfig())


def test_identity_on_relational_atom():
    seq = parse_sequent("x R y |- x R y")
    d = prove(seq, SystemConfig()).derivation
    assert d == Derivation("I", seq, (), RelAtom("x", "R", "y"))
    assert render_text(d) == "I: x R y ⊢ x R y\n"
