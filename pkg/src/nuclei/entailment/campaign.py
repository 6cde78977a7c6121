"""Randomised brute-force checks of conservation on small finite systems.

Every trial draws its own ``random.Random`` from ``"{seed}/{kind}/{index}"``,
so any single trial can be reproduced from the report alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .nucleus import check_nucleus, conservation_report, strong_extension
from .system import (
    EntailmentRelation,
    EntailmentSystem,
    NucleusMap,
    RuleInstance,
    bits,
    dump_system,
    law_violations,
    saturate,
)

__all__ = [
    "random_system",
    "random_nucleus",
    "conservation_trial",
    "axiom_only_trial",
    "intermediate_trial",
    "run_campaign",
    "CampaignReport",
    "KINDS",
]

MAX_COUNTEREXAMPLES = 5


def _random_pair(rng: random.Random, n: int, max_from: int = 2) -> tuple[int, int]:
    mask = 0
    for _ in range(rng.randint(0, max_from)):
        mask |= 1 << rng.randrange(n)
    return mask, rng.randrange(n)


def random_system(
    rng: random.Random,
    max_carrier: int = 6,
    max_axioms: int = 4,
    max_rules: int = 3,
    max_premises: int = 4,
) -> EntailmentSystem:
    """Carrier of 1..max_carrier elements named ``e0, e1, ...``.

    Axiom and rule counts are uniform on their ranges; each rule has
    1..max_premises premises (small premise counts are favoured so rules
    actually fire); every left-hand side has at most two elements.
    """
    n = rng.randint(1, max_carrier)
    carrier = tuple(f"e{i}" for i in range(n))
    axioms = [_random_pair(rng, n) for _ in range(rng.randint(0, max_axioms))]
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        k = min(max_premises, 1 + int(rng.expovariate(1.5)))
        rules.append(RuleInstance([_random_pair(rng, n) for _ in range(k)], _random_pair(rng, n)))
    return EntailmentSystem(carrier, axioms, rules)


def random_nucleus(
    rng: random.Random, rel: EntailmentRelation, attempts: int = 24
) -> NucleusMap:
    """Sample maps with ``j(a)`` drawn from the elements ``a`` entails,
    keep the first that passes :func:`check_nucleus`, else the identity."""
    n = rel.size
    ups = [list(bits(rel.table[1 << a])) for a in range(n)]
    for _ in range(attempts):
        j = NucleusMap(rng.choice(ups[a]) for a in range(n))
        if check_nucleus(rel, j).is_nucleus:
            return j
    return NucleusMap.identity(n)


def _rng(seed: int, kind: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{kind}/{index}")


def conservation_trial(seed: int, index: int, max_carrier: int = 6) -> dict:
    rng = _rng(seed, "conservation", index)
    sys = random_system(rng, max_carrier)
    base = saturate(sys)
    j = random_nucleus(rng, base)
    rep = conservation_report(sys, j, base)
    return {
        "ok": rep.ok and not law_violations(base),
        "equal": rep.equal,
        "compatible": rep.all_rules_compatible,
        "weak_subset_strong": rep.weak_subset_strong,
        "biconditional_ok": rep.biconditional_ok,
        "identity": j.is_identity(),
        "system": sys,
        "nucleus": j,
    }


def axiom_only_trial(seed: int, index: int, max_carrier: int = 6) -> dict:
    rng = _rng(seed, "axiom-only", index)
    sys = random_system(rng, max_carrier, max_rules=0)
    base = saturate(sys)
    j = random_nucleus(rng, base)
    rep = conservation_report(sys, j, base)
    return {
        "ok": rep.equal and rep.ok,
        "equal": rep.equal,
        "identity": j.is_identity(),
        "system": sys,
        "nucleus": j,
    }


def intermediate_trial(seed: int, index: int, max_carrier: int = 6) -> dict:
    """Add axioms valid in the strong extension; the strong extension must not move."""
    rng = _rng(seed, "intermediate", index)
    sys = random_system(rng, max_carrier)
    base = saturate(sys)
    j = random_nucleus(rng, base)
    strong = strong_extension(sys, j)
    n = sys.size
    extra = []
    for _ in range(rng.randint(1, 4)):
        mask = _random_pair(rng, n, max_from=3)[0]
        targets = list(bits(strong.closure(mask)))
        if targets:
            extra.append((mask, rng.choice(targets)))
    bigger = sys.with_axioms(extra)
    same = strong_extension(bigger, j) == strong
    # the enlarged relation sits between the base and the strong extension
    between = base <= saturate(bigger) <= strong
    return {
        "ok": same and between,
        "equal": same,
        "identity": j.is_identity(),
        "system": bigger,
        "nucleus": j,
    }


KINDS = {
    "conservation": conservation_trial,
    "axiom-only": axiom_only_trial,
    "intermediate": intermediate_trial,
}


@dataclass
class CampaignReport:
    kind: str
    seed: int
    trials: int
    failures: int = 0
    equal: int = 0
    compatible: int = 0
    weak_subset_strong: int = 0
    biconditional: int = 0
    nonidentity: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "equal": self.equal,
            "nonidentity_nuclei": self.nonidentity,
            "counterexamples": self.counterexamples,
        }
        if self.kind == "conservation":
            out["all_rules_compatible"] = self.compatible
            out["weak_subset_strong"] = self.weak_subset_strong
            out["biconditional_ok"] = self.biconditional
        return out


def run_campaign(
    kind: str, trials: int, seed: int = 0, max_carrier: int = 6, start: int = 0,
    progress: Optional[callable] = None,
) -> CampaignReport:
    if kind not in KINDS:
        raise ValueError(f"unknown campaign kind {kind!r}")
    trial = KINDS[kind]
    rep = CampaignReport(kind, seed, trials)
    for i in range(start, start + trials):
        r = trial(seed, i, max_carrier)
        rep.equal += r["equal"]
        rep.compatible += r.get("compatible", False)
        rep.weak_subset_strong += r.get("weak_subset_strong", False)
        rep.biconditional += r.get("biconditional_ok", False)
        rep.nonidentity += not r["identity"]
        if not r["ok"]:
            rep.failures += 1
            if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                rep.counterexamples.append(
                    {"trial": i, "system": dump_system(r["system"], r["nucleus"])}
                )
        if progress is not None:
            progress(i)
    return rep
