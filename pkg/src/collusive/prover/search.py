"""Backward proof search for the labeled calculus.

Every rule is applied in its invertible form (left boxes and right diamonds
keep their principal formula; relational rules only add atoms), so search
never backtracks: at each sequent the first applicable rule in a fixed
priority order is applied and all premises must be proved.

Priority order at each sequent:

1. closure: identity, left falsum, non-overlap;
2. one-premise connective rules;
3. relational rules that add an atom over existing labels (refl, symm,
   collusive);
4. left boxes and right diamonds, one new instance at a time;
5. two-premise connective rules;
6. ``cc`` case splits on pairs with neither relation present;
7. right boxes and left diamonds (fresh label);
8. ``total`` and ``surj`` for labels lacking a successor / predecessor.

A rule fires only if it changes the sequent, and each copying instance
(principal, label) fires at most once per branch, since a connective rule
may consume the copied body later.  A sequent where nothing fires is
saturated and seeds a countermodel.  Fresh labels are counted per
branch against ``max_fresh``; branch length is bounded by ``max_depth``.
After a proof is found, inferences whose contribution is never used above
are pruned, which recovers textbook-size derivations.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

from ..errors import MalformedSequent
from ..formula import And, Atom, Bottom, BoxB, BoxF, DiaB, DiaF, Implies, Not, Or
from ..modal import KripkeModel, evaluate
from ..relations import Universe, new_relation
from .kernel import check_derivation
from .sequent import Derivation, LabeledFormula, RelAtom, Sequent, SystemConfig, item_key

__all__ = ["SearchStats", "SearchResult", "prove", "trim", "countermodel", "refutes"]

PROVED, SATURATED, BUDGET = "proved", "saturated", "budget"


@dataclass
class SearchStats:
    nodes: int = 0
    deepest: int = 0
    most_fresh: int = 0
    budget_reason: str | None = None


@dataclass(frozen=True)
class SearchResult:
    status: str
    derivation: Derivation | None = None
    countersequent: Sequent | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def proved(self) -> bool:
        return self.status == PROVED


class _Step(NamedTuple):
    rule: str
    principal: object
    params: tuple
    premises: tuple
    fresh: int = 0


def _sorted(items):
    return sorted(items, key=item_key)


def _lf(item, kind):
    return isinstance(item, LabeledFormula) and isinstance(item.formula, kind)


def _fresh_label(seq: Sequent) -> str:
    used = seq.labels()
    k = 0
    while f"w{k}" in used:
        k += 1
    return f"w{k}"


def _relation_index(gamma):
    succ: dict[str, dict[str, set[str]]] = {}
    pred: dict[str, dict[str, set[str]]] = {}
    for item in gamma:
        if isinstance(item, RelAtom):
            succ.setdefault(item.rel, {}).setdefault(item.src, set()).add(item.dst)
            pred.setdefault(item.rel, {}).setdefault(item.dst, set()).add(item.src)
    return succ, pred


# -- closure --------------------------------------------------------------------

def _closure(seq: Sequent, cfg: SystemConfig) -> Derivation | None:
    for item in _sorted(seq.gamma & seq.delta):
        if isinstance(item, RelAtom) or isinstance(item.formula, Atom):
            return Derivation("I", seq, (), item)
    for item in _sorted(seq.gamma):
        if _lf(item, Bottom):
            return Derivation("botL", seq, (), item)
    for rel, rel2 in cfg.of_kind("nover"):
        for item in _sorted(seq.gamma):
            if isinstance(item, RelAtom) and item.rel == rel and RelAtom(item.src, rel2, item.dst) in seq.gamma:
                return Derivation("nover", seq, (), None, (rel, rel2, item.src, item.dst))
    return None


# -- rule phases ----------------------------------------------------------------

def _alpha(seq, cfg, rng):
    G, D = seq.gamma, seq.delta
    for p in _order(_sorted(G), rng):
        if _lf(p, And):
            a, b = LabeledFormula(p.label, p.formula.left), LabeledFormula(p.label, p.formula.right)
            return _Step("andL", p, (), (Sequent((G - {p}) | {a, b}, D),))
        if _lf(p, Not):
            return _Step("notL", p, (), (Sequent(G - {p}, D | {LabeledFormula(p.label, p.formula.body)}),))
    for p in _order(_sorted(D), rng):
        x, f = getattr(p, "label", None), getattr(p, "formula", None)
        if _lf(p, Not):
            return _Step("notR", p, (), (Sequent(G | {LabeledFormula(x, f.body)}, D - {p}),))
        if _lf(p, Or):
            a, b = LabeledFormula(x, f.left), LabeledFormula(x, f.right)
            return _Step("orR", p, (), (Sequent(G, (D - {p}) | {a, b}),))
        if _lf(p, Implies):
            a, b = LabeledFormula(x, f.left), LabeledFormula(x, f.right)
            return _Step("impR", p, (), (Sequent(G | {a}, (D - {p}) | {b}),))
    return None


def _relational(seq, cfg, rng):
    G, D = seq.gamma, seq.delta
    labels = sorted(seq.labels())
    succ, pred = _relation_index(G)
    candidates = []
    for (rel,) in cfg.of_kind("refl"):
        for x in labels:
            if RelAtom(x, rel, x) not in G:
                candidates.append(("refl", (rel, x), RelAtom(x, rel, x)))
                break
    for (rel,) in cfg.of_kind("symm"):
        for item in _sorted(G):
            if isinstance(item, RelAtom) and item.rel == rel and RelAtom(item.dst, rel, item.src) not in G:
                candidates.append(("symm", (rel, item.src, item.dst), RelAtom(item.dst, rel, item.src)))
                break
    for (rel,) in cfg.of_kind("collusive"):
        found = _collusive_instance(succ.get(rel, {}), pred.get(rel, {}))
        if found:
            x, y, x2, z = found
            candidates.append(("collusive", (rel, x, y, x2, z), RelAtom(x2, rel, z)))
    if not candidates:
        return None
    rule, params, atom = _order(candidates, rng)[0]
    return _Step(rule, None, params, (Sequent(G | {atom}, D),))


def _collusive_instance(succ, pred):
    for x in sorted(succ):
        for y in sorted(succ[x]):
            for x2 in sorted(pred[y]):
                missing = succ[x] - succ.get(x2, set())
                if missing:
                    return x, y, x2, min(missing)
    return None


def _copying(seq, cfg, rng, done=frozenset()):
    """One new instance of a left box or right diamond.

    ``done`` holds the instances already applied on this branch: their
    bodies may since have been decomposed and removed, and re-adding them
    would loop.
    """
    G, D = seq.gamma, seq.delta
    succ, pred = _relation_index(G)
    for side, rules in (("L", ((BoxF, "boxfL", True), (BoxB, "boxbL", False))),
                        ("R", ((DiaF, "diafR", True), (DiaB, "diabR", False)))):
        pool = G if side == "L" else D
        for p in _order(_sorted(pool), rng):
            for kind, rule, forward in rules:
                if not _lf(p, kind):
                    continue
                f = p.formula
                index = succ if forward else pred
                for y in sorted(index.get(f.rel, {}).get(p.label, ())):
                    body = LabeledFormula(y, f.body)
                    if body not in pool and (p, y) not in done:
                        prem = Sequent(G | {body}, D) if side == "L" else Sequent(G, D | {body})
                        return _Step(rule, p, (y,), (prem,))
    return None


def _beta(seq, cfg, rng):
    G, D = seq.gamma, seq.delta
    for p in _order(_sorted(G), rng):
        if _lf(p, Or) or _lf(p, Implies):
            f = p.formula
            a, b = LabeledFormula(p.label, f.left), LabeledFormula(p.label, f.right)
            if isinstance(f, Or):
                return _Step("orL", p, (), (Sequent((G - {p}) | {a}, D), Sequent((G - {p}) | {b}, D)))
            return _Step("impL", p, (), (Sequent(G - {p}, D | {a}), Sequent((G - {p}) | {b}, D)))
    for p in _order(_sorted(D), rng):
        if _lf(p, And):
            f = p.formula
            a, b = LabeledFormula(p.label, f.left), LabeledFormula(p.label, f.right)
            return _Step("andR", p, (), (Sequent(G, (D - {p}) | {a}), Sequent(G, (D - {p}) | {b})))
    return None


def _case_split(seq, cfg, rng):
    G, D = seq.gamma, seq.delta
    labels = sorted(seq.labels())
    for rel, rel2 in cfg.of_kind("cc"):
        pairs = [(x, y) for x in labels for y in labels]
        for x, y in _order(pairs, rng):
            a, b = RelAtom(x, rel, y), RelAtom(x, rel2, y)
            if a not in G and b not in G:
                return _Step("cc", None, (rel, rel2, x, y), (Sequent(G | {a}, D), Sequent(G | {b}, D)))
    return None


def _fresh(seq, cfg, rng):
    G, D = seq.gamma, seq.delta
    y = _fresh_label(seq)
    for p in _order(_sorted(D), rng):
        if _lf(p, BoxF) or _lf(p, BoxB):
            f = p.formula
            edge = RelAtom(p.label, f.rel, y) if isinstance(f, BoxF) else RelAtom(y, f.rel, p.label)
            rule = "boxfR" if isinstance(f, BoxF) else "boxbR"
            return _Step(rule, p, (y,), (Sequent(G | {edge}, (D - {p}) | {LabeledFormula(y, f.body)}),), 1)
    for p in _order(_sorted(G), rng):
        if _lf(p, DiaF) or _lf(p, DiaB):
            f = p.formula
            edge = RelAtom(p.label, f.rel, y) if isinstance(f, DiaF) else RelAtom(y, f.rel, p.label)
            rule = "diafL" if isinstance(f, DiaF) else "diabL"
            return _Step(rule, p, (y,), (Sequent((G - {p}) | {edge, LabeledFormula(y, f.body)}, D),), 1)
    return None


def _seriality(seq, cfg, rng):
    G, D = seq.gamma, seq.delta
    succ, pred = _relation_index(G)
    labels = sorted(seq.labels())
    y = _fresh_label(seq)
    for kind in ("total", "surj"):
        index = succ if kind == "total" else pred
        for (rel,) in cfg.of_kind(kind):
            for x in _order(labels, rng):
                if not index.get(rel, {}).get(x):
                    edge = RelAtom(x, rel, y) if kind == "total" else RelAtom(y, rel, x)
                    return _Step(kind, None, (rel, x, y), (Sequent(G | {edge}, D),), 1)
    return None


_COPY_RULES = {"boxfL", "boxbL", "diafR", "diabR"}
_PHASES = (_alpha, _relational, _copying, _beta, _case_split)


def _order(items, rng):
    items = list(items)
    if rng is not None:
        rng.shuffle(items)
    return items


# -- driver -------------------------------------------------------------------

class _Search:
    def __init__(self, cfg: SystemConfig, rng: random.Random | None):
        self.cfg = cfg
        self.rng = rng
        self.stats = SearchStats()

    def phases(self):
        phases = list(_PHASES)
        if self.rng is not None:
            self.rng.shuffle(phases)
        return phases + [_fresh, _seriality]

    def run(self, seq: Sequent, depth: int, fresh: int, done: frozenset = frozenset()):
        stats = self.stats
        stats.nodes += 1
        stats.deepest = max(stats.deepest, depth)
        stats.most_fresh = max(stats.most_fresh, fresh)
        closed = _closure(seq, self.cfg)
        if closed is not None:
            return PROVED, closed
        if depth >= self.cfg.max_depth:
            stats.budget_reason = "depth"
            return BUDGET, seq
        step = None
        for phase in self.phases():
            if phase is _copying:
                step = phase(seq, self.cfg, self.rng, done)
            else:
                step = phase(seq, self.cfg, self.rng)
            if step is not None:
                break
        if step is None:
            return SATURATED, seq
        if step.fresh and fresh >= self.cfg.max_fresh:
            stats.budget_reason = "fresh labels"
            return BUDGET, seq
        if step.rule in _COPY_RULES:
            done = done | {(step.principal, step.params[0])}
        children = []
        stuck = None
        for premise in step.premises:
            status, payload = self.run(premise, depth + 1, fresh + step.fresh, done)
            if status == SATURATED:
                return status, payload
            if status == BUDGET:
                stuck = stuck or payload
                continue
            children.append(payload)
        if stuck is not None:
            return BUDGET, stuck
        return PROVED, Derivation(step.rule, seq, tuple(children), step.principal, step.params)


def _check_goal(goal: Sequent, cfg: SystemConfig):
    if not isinstance(goal, Sequent):
        raise MalformedSequent("goal must be a Sequent")
    if not goal.gamma and not goal.delta:
        raise MalformedSequent("empty goal sequent")
    declared = cfg.relations
    if declared:
        unknown = goal.relation_names() - declared
        if unknown:
            raise MalformedSequent(f"goal mentions relations {sorted(unknown)} not covered by the rule set")


def prove(goal: Sequent, cfg: SystemConfig | None = None, rng: random.Random | None = None,
          prune: bool = True) -> SearchResult:
    """Search for a derivation of ``goal``.

    ``rng`` shuffles the rule priorities and candidate orders (fresh-label
    rules still come last); used to test that the result does not depend on
    the order.  With ``prune`` the returned derivation is the pruned one
    whenever the kernel accepts it.
    """
    cfg = cfg or SystemConfig()
    _check_goal(goal, cfg)
    search = _Search(cfg, rng)
    status, payload = search.run(goal, 0, 0)
    if status == PROVED:
        derivation = payload
        if prune:
            pruned = trim(derivation)
            if check_derivation(pruned, cfg):
                derivation = pruned
        return SearchResult(PROVED, derivation, None, search.stats)
    if status == SATURATED:
        return SearchResult(SATURATED, None, payload, search.stats)
    return SearchResult(BUDGET, None, payload, search.stats)


# -- pruning ----------------------------------------------------------------------

def _tagged(seq: Sequent):
    return {("L", i) for i in seq.gamma} | {("R", i) for i in seq.delta}


def _uses(node: Derivation):
    """Conclusion items an inference reads."""
    p, rule, params = node.principal, node.rule, node.params
    if rule == "I":
        return {("L", p), ("R", p)}
    if rule == "nover":
        rel, rel2, x, y = params
        return {("L", RelAtom(x, rel, y)), ("L", RelAtom(x, rel2, y))}
    if rule == "collusive":
        rel, x, y, x2, z = params
        return {("L", RelAtom(x, rel, y)), ("L", RelAtom(x2, rel, y)), ("L", RelAtom(x, rel, z))}
    if rule == "symm":
        rel, x, y = params
        return {("L", RelAtom(x, rel, y))}
    if rule in ("refl", "total", "surj", "cc"):
        return set()
    side = "L" if rule.endswith("L") else "R"
    used = {(side, p)}
    if rule in ("boxfL", "boxbL", "diafR", "diabR"):
        (y,) = params
        f = p.formula
        forward = rule in ("boxfL", "diafR")
        edge = RelAtom(p.label, f.rel, y) if forward else RelAtom(y, f.rel, p.label)
        used.add(("L", edge))
    return used


def _shift(node: Derivation, remove, add) -> Derivation:
    def adjust(seq):
        gamma = {i for s, i in _tagged(seq) - remove if s == "L"} | {i for s, i in add if s == "L"}
        delta = {i for s, i in _tagged(seq) - remove if s == "R"} | {i for s, i in add if s == "R"}
        return Sequent(frozenset(gamma), frozenset(delta))

    return Derivation(node.rule, adjust(node.conclusion),
                      tuple(_shift(p, remove, add) for p in node.premises), node.principal, node.params)


def _trim(node: Derivation):
    if not node.premises:
        return node, _uses(node)
    trimmed = [_trim(p) for p in node.premises]
    conclusion = _tagged(node.conclusion)
    for premise, used in trimmed:
        above = _tagged(premise.conclusion)
        added = above - conclusion
        if not (used & added):
            dropped = conclusion - above
            return _shift(premise, added, dropped), used
    used = set(_uses(node))
    for _, child_used in trimmed:
        used |= child_used & conclusion
    return Derivation(node.rule, node.conclusion, tuple(p for p, _ in trimmed),
                      node.principal, node.params), used


def trim(d: Derivation) -> Derivation:
    """Drop inferences whose added items are never used above them."""
    return _trim(d)[0]


# -- countermodels ----------------------------------------------------------------

def countermodel(seq: Sequent, relations=()) -> tuple[KripkeModel, list[str]]:
    """Model read off a (saturated) sequent: worlds are its labels.

    Relations hold exactly where ``Gamma`` has the atom; an atom is true at
    a world exactly when ``Gamma`` contains it there.
    """
    labels = sorted(seq.labels())
    index = {label: i for i, label in enumerate(labels)}
    universe = Universe(len(labels), tuple(labels))
    names = set(relations) | seq.relation_names()
    edges = {name: [] for name in names}
    valuation: dict[str, set[int]] = {}
    for item in seq.gamma:
        if isinstance(item, RelAtom):
            edges[item.rel].append((index[item.src], index[item.dst]))
        elif isinstance(item.formula, Atom):
            valuation.setdefault(item.formula.name, set()).add(index[item.label])
    model = KripkeModel(universe, {n: new_relation(universe, e) for n, e in edges.items()},
                        {a: frozenset(w) for a, w in valuation.items()})
    return model, labels


def refutes(model: KripkeModel, labels: list[str], seq: Sequent) -> bool:
    """Does the model (worlds named by ``labels``) make ``seq`` false?"""
    index = {label: i for i, label in enumerate(labels)}

    def holds(item):
        if isinstance(item, RelAtom):
            r = model.relations.get(item.rel)
            return r is not None and r.has(index[item.src], index[item.dst])
        return evaluate(model, index[item.label], item.formula)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return all(holds(i) for i in seq.gamma) and not any(holds(i) for i in seq.delta)
