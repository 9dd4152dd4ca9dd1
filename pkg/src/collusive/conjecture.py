"""Counterexample search: do irreflexive, collusive, confluent and co-confluent
relations induce strongly balanced frames?

For symmetric relations the answer is known to be yes, so only
non-symmetric candidates are examined.  Each candidate ``R`` is turned into
the symmetric frame ``<X, ~, R u R^-1>`` for three choices of friendship
``~``: same attackers (left), same targets (right), or both.  A candidate
fails for a choice when the frame is invalid, contains an unbalanced triad,
or admits no balancing bipartition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .balance import SignedFrame, classify_triads, strong_balance_partition, validate_frame
from .classes import CoalitionSide, bi_equi_relation, equi_relation
from .generators import random_collusive
from .relations import Relation, all_relations, check_basic, check_quadrangular, inverse, union

__all__ = ["Finding", "SearchSummary", "conjecture_search", "examine", "render_summary", "MAX_N", "EXHAUSTIVE_N"]

MAX_N = 6
EXHAUSTIVE_N = 4
VARIANTS = ("left", "right", "both")


@dataclass(frozen=True)
class Finding:
    relation: Relation
    variant: str
    reasons: tuple[str, ...]

    def describe(self) -> str:
        return f"n={self.relation.n} variant={self.variant} rel={self.relation.format()} " + "; ".join(self.reasons)


@dataclass
class SearchSummary:
    seed: int
    samples: int
    rows: list[tuple[int, str, int, int, int, int]]  # n, mode, examined, candidates, non-symmetric, failing
    findings: list[Finding]


def is_candidate(r: Relation) -> bool:
    return bool(check_basic(r, "irreflexive")) and all(
        check_quadrangular(r, q) for q in ("Q3", "Q1", "Q2"))


def _friendship(r: Relation, variant: str) -> Relation:
    if variant == "both":
        return bi_equi_relation(r)
    return equi_relation(r, CoalitionSide(variant))


def examine(r: Relation) -> list[Finding]:
    findings = []
    for variant in VARIANTS:
        frame = SignedFrame(r.universe, _friendship(r, variant), union(r, inverse(r)))
        diagnostics = validate_frame(frame)
        if not diagnostics.valid:
            findings.append(Finding(r, variant, (f"invalid frame: {diagnostics.summary()}",)))
            continue
        reasons = []
        census = classify_triads(frame)
        if census.c or census.d:
            reasons.append(f"unbalanced triads c={census.c} d={census.d}")
        if strong_balance_partition(frame) is None:
            reasons.append("no balancing bipartition")
        if reasons:
            findings.append(Finding(r, variant, tuple(reasons)))
    return findings


def conjecture_search(max_n: int, samples: int = 2000, seed: int = 0) -> SearchSummary:
    """Exhaustive for ``n <= 4``; ``samples`` random collusive relations per larger ``n``."""
    if not 1 <= max_n <= MAX_N:
        raise ValueError(f"max_n must be between 1 and {MAX_N}")
    rng = random.Random(seed)
    rows = []
    findings: list[Finding] = []
    for n in range(1, max_n + 1):
        if n <= EXHAUSTIVE_N:
            pool = all_relations(n)
            mode = "exhaustive"
        else:
            pool = (random_collusive(n, rng) for _ in range(samples))
            mode = "sampled"
        examined = candidates = asymmetric = failing = 0
        for r in pool:
            examined += 1
            if not is_candidate(r):
                continue
            candidates += 1
            if check_basic(r, "symmetric"):
                continue
            asymmetric += 1
            found = examine(r)
            failing += bool(found)
            findings.extend(found)
        rows.append((n, mode, examined, candidates, asymmetric, failing))
    return SearchSummary(seed, samples, rows, findings)


def render_summary(summary: SearchSummary) -> str:
    lines = [
        "# irreflexive + collusive + confluent + co-confluent => strongly balanced?",
        "# friendship variants: left (same attackers), right (same targets), both",
        f"seed {summary.seed}",
        f"samples {summary.samples}",
    ]
    for n, mode, examined, candidates, asymmetric, failing in summary.rows:
        lines.append(f"n {n} {mode} examined {examined} candidates {candidates} "
                     f"non_symmetric {asymmetric} failing {failing}")
    lines.extend("finding " + f.describe() for f in summary.findings)
    verdict = "survived" if not summary.findings else f"counterexamples {len(summary.findings)}"
    lines.append(f"result {verdict}")
    return "\n".join(lines) + "\n"
