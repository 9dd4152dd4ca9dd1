"""Attack relations and the protection relations they induce.

Reading ``x R y`` as "x attacks y", ``x`` protects ``z`` when ``x`` attacks
every attacker of ``z``.  With bit masks that is a single subset test:
``in(z) <= out(x)``.  Elements nobody attacks are therefore protected by
everybody; *actual* protection excludes that vacuous case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .relations import Relation, lowest

__all__ = [
    "ProtectionReport",
    "protection",
    "actual_protection",
    "consistency_report",
]


def protection(r: Relation) -> Relation:
    inn, out = r.inn, r.out
    rows = []
    for x in range(r.n):
        row = 0
        for z in range(r.n):
            if inn[z] & ~out[x] == 0:
                row |= 1 << z
        rows.append(row)
    return Relation(r.universe, tuple(rows))


def actual_protection(r: Relation) -> Relation:
    attacked = 0
    for z, mask in enumerate(r.inn):
        if mask:
            attacked |= 1 << z
    return Relation(r.universe, tuple(row & attacked for row in protection(r).out))


@dataclass(frozen=True)
class ProtectionReport:
    protection: Relation
    actual_protection: Relation
    consistent: bool
    complete: bool
    violation: tuple[int, int] | None = None


def consistency_report(r: Relation) -> ProtectionReport:
    """Consistent: nobody protects someone they attack.

    Complete: consistent, and every non-attacked pair is a protected pair.
    ``violation`` is the lexicographically least ``(x, y)`` with ``x`` both
    protecting and attacking ``y``.
    """
    prot = protection(r)
    row_mask = (1 << r.n) - 1
    violation = None
    for x in range(r.n):
        both = prot.out[x] & r.out[x]
        if both:
            violation = (x, lowest(both))
            break
    consistent = violation is None
    complete = consistent and all((prot.out[x] | r.out[x]) == row_mask for x in range(r.n))
    return ProtectionReport(prot, actual_protection(r), consistent, complete, violation)
