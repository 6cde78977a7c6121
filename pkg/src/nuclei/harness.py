"""Seeded fuzz campaigns over the logical nuclei.

Sample ``i`` of check ``c`` under seed ``s`` is generated from
``random.Random(f"{s}/{c}/{i}")``, so reports are reproducible sample by
sample. Formulas have at most 4 atoms and 8 connectives; contexts at most 3
hypotheses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .calculus import Logic
from .formula import Sequent, random_formula, random_sequent, render, render_sequent
from .logical import deduction_check, df_check, glivenko_check, peirce_equiv_check

__all__ = ["CHECKS", "CheckReport", "run_check", "sample_rng"]

ATOMS = 4
CONNECTIVES = 8
CONTEXT = 3
MAX_FAILURES = 20


def sample_rng(seed: int, check: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{check}/{index}")


def _sequent(rng: random.Random) -> Sequent:
    return random_sequent(ATOMS, CONNECTIVES, CONTEXT, rng.getrandbits(64))


@dataclass
class CheckReport:
    check: str
    samples: int
    seed: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    failure_count: int = 0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def fail(self, index: int, text: str, **detail) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append({"index": index, "sequent": text, **detail})

    def bump(self, key: str, hit: bool = True) -> None:
        self.counts[key] = self.counts.get(key, 0) + bool(hit)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


def _glivenko(rep: CheckReport, i: int, rng: random.Random) -> None:
    s = _sequent(rng)
    r = glivenko_check(s)
    rep.bump("agree", r.agree)
    rep.bump("classical", r.classical)
    if not r.agree:
        rep.fail(i, render_sequent(s), classical=r.classical, weak=r.weak)


def _df(rep: CheckReport, i: int, rng: random.Random) -> None:
    s = _sequent(rng)
    r = df_check(s)
    rep.bump("forward", r.forward_weak_to_strong)
    rep.bump("weak", r.weak)
    rep.bump("strong", r.strong)
    # strong without weak: the expected converse failures
    rep.bump("converse_fails", r.strong and not r.weak)
    if not r.forward_weak_to_strong:
        rep.fail(i, render_sequent(s), weak=r.weak, strong=r.strong)


def _peirce(rep: CheckReport, i: int, rng: random.Random) -> None:
    phi = random_formula(ATOMS, CONNECTIVES, rng.getrandbits(64))
    ok = peirce_equiv_check(phi)
    rep.bump("equivalent", ok)
    if not ok:
        rep.fail(i, render(phi))


def _deduction(rep: CheckReport, i: int, rng: random.Random) -> None:
    logic = Logic(i % 4)
    a = random_formula(ATOMS, 3, rng.getrandbits(64))
    s = _sequent(rng)
    ok = deduction_check(logic, a, s)
    rep.bump(f"agree_{logic.name.lower()}", ok)
    if not ok:
        rep.fail(i, render_sequent(s), logic=logic.name.lower(), a=render(a))


CHECKS = {
    "glivenko": _glivenko,
    "df": _df,
    "peirce": _peirce,
    "deduction": _deduction,
}


def run_check(check: str, samples: int, seed: int = 0) -> CheckReport:
    if check not in CHECKS:
        raise ValueError(f"unknown check {check!r}")
    if samples < 1:
        raise ValueError("samples must be positive")
    step = CHECKS[check]
    rep = CheckReport(check, samples, seed)
    for i in range(samples):
        step(rep, i, sample_rng(seed, check, i))
    return rep
