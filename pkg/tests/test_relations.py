import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from collusive.errors import IndexOutOfRange
from collusive.relations import (BASIC_PROPERTIES, PATTERNS, QuadPattern, Relation, Universe,
                                 all_relations, check_basic, check_quadrangular,
                                 check_quadrangular_naive, full, identity, initial_elements,
                                 inverse, is_collusion, is_collusive_fast, is_equivalence,
                                 new_relation, union)

import oracles
from conftest import one_based


def relations(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.integers(0, (1 << (n * n)) - 1).map(lambda c: Relation.from_code(n, c)))


def test_from_code_bit_layout():
    r = Relation.from_code(3, 1 << (1 * 3 + 2))
    assert r.pairs() == [(1, 2)]
    assert Relation.from_code(3, r.code) == r


def test_in_neighbourhoods_mirror_out():
    r = one_based(3, [(1, 2), (2, 3), (3, 2)])
    assert r.predecessors(1) == {0, 2}
    assert inverse(r).successors(1) == r.predecessors(1)


def test_out_of_range_edge_rejected():
    with pytest.raises(IndexOutOfRange):
        new_relation(3, [(0, 3)])


def test_labels_used_in_format():
    r = one_based(3, [(1, 2)])
    assert r.format() == "{(1,2)}"
    assert Universe(2).format({0, 1}) == "{0,1}"


def test_basic_witnesses_are_least():
    r = one_based(3, [(1, 2), (2, 3), (3, 3)])
    assert check_basic(r, "irreflexive").witness == (2,)
    assert check_basic(r, "reflexive").witness == (0,)
    assert check_basic(r, "transitive").witness == (0, 1, 2)
    assert check_basic(r, "symmetric").witness == (0, 1)
    assert check_basic(r, "total")
    assert check_basic(r, "surjective").witness == (0,)


def test_initial_elements():
    r = one_based(4, [(1, 2), (2, 3)])
    assert initial_elements(r) == {0, 3}


def test_equivalence_and_constants():
    assert is_equivalence(identity(3)) and is_equivalence(full(3))
    assert not is_equivalence(one_based(2, [(1, 2)]))


@pytest.mark.parametrize("prop", BASIC_PROPERTIES)
def test_basic_properties_against_quantifiers(prop):
    n = 3
    defs = {
        "reflexive": lambda p: all((x, x) in p for x in range(n)),
        "irreflexive": lambda p: all((x, x) not in p for x in range(n)),
        "symmetric": lambda p: all((y, x) in p for x, y in p),
        "total": lambda p: all(any((x, y) in p for y in range(n)) for x in range(n)),
        "surjective": lambda p: all(any((y, x) in p for y in range(n)) for x in range(n)),
        "transitive": lambda p: all((x, z) in p for x, y in p for y2, z in p if y == y2),
        "anti_transitive": lambda p: all((x, z) not in p for x, y in p for y2, z in p if y == y2),
    }
    for r in all_relations(n):
        assert bool(check_basic(r, prop)) == defs[prop](set(r.pairs()))


def test_named_patterns_match_transcribed_formulas():
    transcribed = {"Q1": oracles.confluent, "Q2": oracles.co_confluent, "Q3": oracles.collusive}
    for r in all_relations(3):
        pairs = set(r.pairs())
        for name, formula in transcribed.items():
            assert bool(check_quadrangular(r, name)) == formula(pairs, 3)


def test_fast_equals_naive_with_witness_n3():
    for r in all_relations(3):
        for name in PATTERNS:
            assert check_quadrangular(r, name) == check_quadrangular_naive(r, name)


def test_witness_falsifies():
    m = oracles.relation_tensor(3)
    for name, pattern in PATTERNS.items():
        holds, first = oracles.quad_sweep(m, pattern.flags)
        for code in range(0, 512, 7):
            result = check_quadrangular(Relation.from_code(3, code), name)
            assert result.holds == holds[code]
            if not result:
                assert result.witness == oracles.unflatten(first[code], 3)
                assert not pattern.holds_at(Relation.from_code(3, code), *result.witness)


def test_reversed_first_atom_is_a_renaming():
    rels = list(all_relations(3))
    for flags in itertools.product([True, False], repeat=3):
        raw = QuadPattern(False, *flags)
        canonical = raw.normalized()
        assert canonical.a1
        for r in rels:
            assert bool(check_quadrangular_naive(r, raw)) == bool(check_quadrangular(r, canonical))


def test_aliases():
    assert QuadPattern.from_name("collusive") == PATTERNS["Q3"]
    assert QuadPattern.from_name("protective") == PATTERNS["Q2"]
    assert QuadPattern.from_name("q1").name == "Q1"
    assert "zRw" in PATTERNS["Q1"].formula()
    with pytest.raises(ValueError):
        QuadPattern.from_name("Q9")


def test_collusion():
    three_cycle = one_based(3, [(1, 2), (2, 3), (3, 1)])
    assert is_collusion(three_cycle)
    assert not is_collusion(one_based(3, [(1, 2), (2, 3)]))


@settings(max_examples=300, deadline=None)
@given(relations())
def test_collusive_means_equal_or_disjoint_targets(r):
    expected = all(a == b or not a & b for a in r.out for b in r.out)
    assert is_collusive_fast(r) == expected


@settings(max_examples=200, deadline=None)
@given(relations(4))
def test_symmetric_collusive_union_of_inverse(r):
    s = union(r, inverse(r))
    assert check_basic(s, "symmetric")


@settings(max_examples=200, deadline=None)
@given(relations(5), st.sampled_from(sorted(PATTERNS)))
def test_pattern_invariant_under_relabeling(r, name):
    perm = list(range(r.n))[::-1]
    renamed = new_relation(r.n, [(perm[x], perm[y]) for x, y in r.pairs()])
    assert bool(check_quadrangular(r, name)) == bool(check_quadrangular(renamed, name))


def test_tensor_layout_matches_codes():
    m = oracles.relation_tensor(2)
    for code in range(16):
        r = Relation.from_code(2, code)
        assert {(x, y) for x in range(2) for y in range(2) if m[code, x, y]} == set(r.pairs())
    assert np.all(m[0] == 0)
