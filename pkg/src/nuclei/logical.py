"""Formula-level nuclei and the conservation results they give over the logic tower.

A nucleus here is a formula transformer ``j``. Its weak extension proves
``Γ |- jφ`` in the base logic. Its strong extension is obtained from a fixed
table: Glivenko and Peirce over intuitionistic logic go to classical logic,
Dragalin-Friedman over minimal logic goes to intuitionistic logic, and the
deduction nucleus for ``A`` over any logic goes to that logic with ``A``
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .calculus import Logic, ProveResult, prove
from .formula import BOT, Formula, Imp, Not, Or, Sequent, parse, render
from .semantics import classical_valid

__all__ = [
    "LogicalNucleus",
    "GLIVENKO",
    "PEIRCE",
    "DF",
    "deduction",
    "parse_nucleus",
    "apply_nucleus",
    "AssumeA",
    "BaseStrongPair",
    "PairMismatch",
    "strong_pair",
    "weak_provable",
    "strong_provable",
    "check_imp_criterion",
    "GlivenkoCheck",
    "DFCheck",
    "glivenko_check",
    "df_check",
    "peirce_equiv_check",
    "deduction_check",
    "unit_holds",
    "lj_holds",
]

KINDS = ("glivenko", "peirce", "df", "deduction")


@dataclass(frozen=True)
class LogicalNucleus:
    kind: str
    a: Optional[Formula] = None  # the fixed hypothesis of a deduction nucleus

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown nucleus {self.kind!r}")
        if (self.kind == "deduction") != (self.a is not None):
            raise ValueError("exactly the deduction nucleus carries a formula")

    def __call__(self, f: Formula) -> Formula:
        return apply_nucleus(self, f)

    def __str__(self) -> str:
        return f"deduction:{render(self.a)}" if self.kind == "deduction" else self.kind


GLIVENKO = LogicalNucleus("glivenko")
PEIRCE = LogicalNucleus("peirce")
DF = LogicalNucleus("df")


def deduction(a: Union[Formula, str]) -> LogicalNucleus:
    return LogicalNucleus("deduction", parse(a) if isinstance(a, str) else a)


def parse_nucleus(text: str) -> LogicalNucleus:
    """``glivenko``, ``peirce``, ``df`` or ``deduction:<formula>``."""
    name, sep, rest = text.partition(":")
    name = name.strip().lower()
    if name == "deduction":
        if not sep or not rest.strip():
            raise ValueError("deduction nucleus needs a formula, as in deduction:p")
        return deduction(rest)
    if sep:
        raise ValueError(f"nucleus {name!r} takes no argument")
    return LogicalNucleus(name)


def apply_nucleus(n: LogicalNucleus, f: Formula) -> Formula:
    if n.kind == "glivenko":
        return Not(Not(f))
    if n.kind == "peirce":
        return Imp(Not(f), f)
    if n.kind == "df":
        return Or(f, BOT)
    return Imp(n.a, f)


# ---------------------------------------------------------------- pairs


@dataclass(frozen=True)
class AssumeA:
    """The base logic extended by the single axiom ``|- A``."""

    base: Logic
    a: Formula

    def __str__(self) -> str:
        return f"{self.base.name.lower()}+{render(self.a)}"


@dataclass(frozen=True)
class BaseStrongPair:
    base: Logic
    strong: Union[Logic, AssumeA]


class PairMismatch(ValueError):
    pass


def strong_pair(n: LogicalNucleus, base: Logic) -> BaseStrongPair:
    base = Logic(base)
    if n.kind in ("glivenko", "peirce"):
        if base is not Logic.INTUITIONISTIC:
            raise PairMismatch(f"{n} is paired with intuitionistic logic, not {base.name.lower()}")
        return BaseStrongPair(base, Logic.CLASSICAL)
    if n.kind == "df":
        if base is not Logic.MINIMAL:
            raise PairMismatch(f"df is paired with minimal logic, not {base.name.lower()}")
        return BaseStrongPair(base, Logic.INTUITIONISTIC)
    return BaseStrongPair(base, AssumeA(base, n.a))


def weak_provable(base: Logic, n: LogicalNucleus, s: Sequent, **kw) -> ProveResult:
    return prove(base, Sequent(s.context, apply_nucleus(n, s.goal)), **kw)


def strong_provable(pair: BaseStrongPair, n: LogicalNucleus, s: Sequent, **kw) -> ProveResult:
    if strong_pair(n, pair.base) != pair:
        raise PairMismatch(f"{pair} does not belong to {n}")
    if isinstance(pair.strong, AssumeA):
        return prove(pair.base, Sequent(s.context | {pair.strong.a}, s.goal), **kw)
    return prove(pair.strong, s, **kw)


def check_imp_criterion(base: Logic, n: LogicalNucleus, phi: Formula, psi: Formula) -> bool:
    """Is ``φ -> jψ |- j(φ -> ψ)`` provable in ``base``?

    This single sequent decides whether implication introduction survives
    reading every goal through ``j``.
    """
    return prove(base, Sequent([Imp(phi, n(psi))], n(Imp(phi, psi)))).provable


def unit_holds(base: Logic, n: LogicalNucleus, phi: Formula) -> bool:
    """``φ |- jφ``."""
    return prove(base, Sequent([phi], n(phi))).provable


def lj_holds(base: Logic, n: LogicalNucleus, ctx: Iterable[Formula], phi: Formula, psi: Formula) -> bool:
    """``Γ, φ |- jψ`` implies ``Γ, jφ |- jψ``."""
    ctx = frozenset(ctx)
    goal = n(psi)
    if not prove(base, Sequent(ctx | {phi}, goal)).provable:
        return True
    return prove(base, Sequent(ctx | {n(phi)}, goal)).provable


# ---------------------------------------------------------------- checks


@dataclass(frozen=True)
class GlivenkoCheck:
    classical: bool
    weak: bool

    @property
    def agree(self) -> bool:
        return self.classical == self.weak


def glivenko_check(s: Sequent) -> GlivenkoCheck:
    classical = classical_valid(s)
    weak = weak_provable(Logic.INTUITIONISTIC, GLIVENKO, s).provable
    return GlivenkoCheck(classical, weak)


@dataclass(frozen=True)
class DFCheck:
    weak: bool
    strong: bool

    @property
    def forward_weak_to_strong(self) -> bool:
        return self.strong or not self.weak


def df_check(s: Sequent) -> DFCheck:
    """Weak extension over minimal logic against intuitionistic logic.

    Only weak-implies-strong is guaranteed; implication introduction is not
    compatible with ``φ | F`` over minimal logic, so the converse can fail.
    """
    weak = weak_provable(Logic.MINIMAL, DF, s).provable
    strong = prove(Logic.INTUITIONISTIC, s).provable
    return DFCheck(weak, strong)


def peirce_equiv_check(phi: Formula) -> bool:
    """``~~φ`` and ``~φ -> φ`` prove each other intuitionistically."""
    g, p = GLIVENKO(phi), PEIRCE(phi)
    return (
        prove(Logic.INTUITIONISTIC, Sequent([g], p)).provable
        and prove(Logic.INTUITIONISTIC, Sequent([p], g)).provable
    )


def deduction_check(base: Logic, a: Formula, s: Sequent) -> bool:
    """Assuming ``A`` proves the goal exactly when ``A -> goal`` is provable."""
    assumed = prove(base, Sequent(s.context | {a}, s.goal)).provable
    translated = prove(base, Sequent(s.context, Imp(a, s.goal))).provable
    return assumed == translated
