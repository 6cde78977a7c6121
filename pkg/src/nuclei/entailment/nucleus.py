"""Nuclei over finite entailment relations, their two extensions, and conservation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .system import (
    EntailmentRelation,
    EntailmentSystem,
    NotANucleus,
    NucleusMap,
    Pair,
    RuleInstance,
    bits,
    law_violations,
    saturate,
)

__all__ = [
    "NucleusReport",
    "ConservationReport",
    "check_nucleus",
    "weak_extension",
    "strong_extension",
    "stability_axioms",
    "rule_holds",
    "conservation_report",
]

VIOLATION_LIMIT = 50


@dataclass
class NucleusReport:
    is_nucleus: bool
    rj_violations: list = field(default_factory=list)  # elements b without b |> jb
    lj_violations: list = field(default_factory=list)  # (U mask, a, b), capped
    lj_violation_count: int = 0

    @property
    def rj(self) -> bool:
        return not self.rj_violations

    @property
    def lj(self) -> bool:
        return self.lj_violation_count == 0

    def to_json(self, carrier) -> dict:
        def name(i):
            return str(carrier[i])

        return {
            "is_nucleus": self.is_nucleus,
            "rj": self.rj,
            "lj": self.lj,
            "rj_violations": [name(b) for b in self.rj_violations],
            "lj_violations": [
                {"context": [name(i) for i in bits(u)], "a": name(a), "b": name(b)}
                for u, a, b in self.lj_violations
            ],
            "lj_violation_count": self.lj_violation_count,
        }


def check_nucleus(rel: EntailmentRelation, j: NucleusMap) -> NucleusReport:
    """Check ``b |> jb`` for all b and rule Lj over every subset U."""
    n = rel.size
    if len(j) != n:
        raise ValueError("nucleus map and carrier differ in size")
    table = rel.table
    rj_bad = [b for b in range(n) if not table[1 << b] >> j[b] & 1]
    images = j.image_mask()
    lj_bad, count = [], 0
    for u in range(1 << n):
        for a in range(n):
            if u >> a & 1:
                continue  # U,a = U and U,ja contains U
            bad = table[u | 1 << a] & ~table[u | 1 << j[a]] & images
            if not bad:
                continue
            for b in range(n):
                if bad >> j[b] & 1:
                    count += 1
                    if len(lj_bad) < VIOLATION_LIMIT:
                        lj_bad.append((u, a, b))
    return NucleusReport(not rj_bad and count == 0, rj_bad, lj_bad, count)


def _require_nucleus(rel: EntailmentRelation, j: NucleusMap) -> None:
    report = check_nucleus(rel, j)
    if not report.is_nucleus:
        raise NotANucleus(
            f"not a nucleus: Rj fails at {len(report.rj_violations)} elements, "
            f"Lj fails at {report.lj_violation_count} instances"
        )


def weak_extension(
    rel: EntailmentRelation, j: NucleusMap, *, check: bool = True
) -> EntailmentRelation:
    """``U |>_j a`` iff ``U |> ja``."""
    if check:
        _require_nucleus(rel, j)
    out = EntailmentRelation(rel.carrier, [rel.gens[j[a]] for a in range(rel.size)])
    if check:
        problems = law_violations(out)
        if problems:
            raise RuntimeError(f"weak extension is not an entailment relation: {problems[:3]}")
    return out


def stability_axioms(j: NucleusMap) -> list[Pair]:
    return [(1 << j[a], a) for a in range(len(j))]


def strong_extension(sys: EntailmentSystem, j: NucleusMap) -> EntailmentRelation:
    """The system regenerated with the stability axioms ``ja |> a`` added."""
    if len(j) != sys.size:
        raise ValueError("nucleus map and carrier differ in size")
    return saturate(sys.with_axioms(stability_axioms(j)))


def rule_holds(
    rel: EntailmentRelation, r: RuleInstance, j: Optional[NucleusMap] = None
) -> bool:
    """Does the instance hold in ``rel`` (or, given ``j``, in its weak extension)?"""
    target = (lambda b: b) if j is None else (lambda b: j[b])
    if all(rel.holds(m, target(b)) for m, b in r.premises):
        m, b = r.conclusion
        return rel.holds(m, target(b))
    return True


@dataclass
class ConservationReport:
    weak_subset_strong: bool
    equal: bool
    all_rules_compatible: bool
    biconditional_ok: bool
    incompatible_rules: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.weak_subset_strong and self.biconditional_ok

    def to_json(self) -> dict:
        return {
            "weak_subset_strong": self.weak_subset_strong,
            "equal": self.equal,
            "all_rules_compatible": self.all_rules_compatible,
            "biconditional_ok": self.biconditional_ok,
            "incompatible_rules": list(self.incompatible_rules),
        }


def conservation_report(
    sys: EntailmentSystem, j: NucleusMap, base: Optional[EntailmentRelation] = None
) -> ConservationReport:
    """Compare the weak and strong extensions and test every rule for compatibility."""
    base = saturate(sys) if base is None else base
    _require_nucleus(base, j)
    weak = weak_extension(base, j, check=False)
    strong = strong_extension(sys, j)
    equal = weak == strong
    bad = [i for i, r in enumerate(sys.rules) if not rule_holds(base, r, j)]
    compatible = not bad
    return ConservationReport(weak <= strong, equal, compatible, equal == compatible, bad)

