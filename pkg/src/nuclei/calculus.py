"""Decision procedures for positive, minimal, intuitionistic and classical logic.

The three constructive logics share one terminating, contraction-free
sequent search in the style of Dyckhoff's G4ip. Minimal and positive logic
run it with falsum treated as an ordinary atom; positive logic additionally
turns every outermost negation into an opaque atom first, since no axiom of
positive logic mentions negation or falsum. Classical logic goes to the
truth-table oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .formula import (
    BOT,
    And,
    Atom,
    Bot,
    Formula,
    Imp,
    Not,
    Or,
    Sequent,
    Top,
    render,
)
from .semantics import (
    BOT_ATOM,
    KripkeModel,
    Mode,
    classical_countermodel,
    classical_valid,
    find_countermodel,
    refutes,
)

__all__ = [
    "Logic",
    "Verdict",
    "ProveResult",
    "Derivation",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "reduce_pc",
    "reduce_opaque_negation",
    "reduce_sequent",
    "prove",
    "is_provable",
    "check_derivation",
    "opaque_atom",
]

DEFAULT_BUDGET = 10**6


class Logic(enum.IntEnum):
    """Ordered so that ``a <= b`` means logic ``a`` is contained in ``b``."""

    POSITIVE = 0
    MINIMAL = 1
    INTUITIONISTIC = 2
    CLASSICAL = 3

    @property
    def code(self) -> str:
        return "pmic"[self]

    @classmethod
    def from_code(cls, code: str) -> "Logic":
        try:
            return cls("pmic".index(code.lower()[:1])) if len(code) == 1 else cls[code.upper()]
        except (ValueError, KeyError):
            raise ValueError(f"unknown logic {code!r}; expected one of p, m, i, c") from None


class Verdict(enum.Enum):
    PROVABLE = "provable"
    UNPROVABLE = "unprovable"


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------- reductions


def reduce_pc(f: Formula) -> Formula:
    """Replace every ``~A`` by ``A -> F``, recursively."""
    t = type(f)
    if t is Not:
        return Imp(reduce_pc(f.child), BOT)
    if t in (And, Or, Imp):
        left, right = reduce_pc(f.left), reduce_pc(f.right)
        if left is f.left and right is f.right:
            return f
        return t(left, right)
    return f


def opaque_atom(negated: Formula) -> Atom:
    """The fresh atom standing for ``~negated`` in positive logic.

    Names start with an underscore so they never clash with parsed atoms.
    """
    return Atom(f"_not[{render(negated)}]")


def reduce_opaque_negation(f: Formula) -> Formula:
    """Replace each outermost ``~A`` by an atom keyed on ``A``; ``F`` becomes ``_bot``."""
    t = type(f)
    if t is Not:
        return opaque_atom(f.child)
    if t is Bot:
        return Atom(BOT_ATOM)
    if t in (And, Or, Imp):
        return t(reduce_opaque_negation(f.left), reduce_opaque_negation(f.right))
    return f


def reduce_sequent(logic: Logic, s: Sequent) -> Sequent:
    """The sequent the engine (or truth table) actually decides for ``logic``."""
    fn = reduce_opaque_negation if logic is Logic.POSITIVE else reduce_pc
    return Sequent((fn(f) for f in s.context), fn(s.goal))


# ----------------------------------------------------------------- search


@dataclass(frozen=True)
class Derivation:
    """One rule application: conclusion, rule name, principal formula, premises."""

    rule: str
    principal: Optional[Formula]
    context: frozenset
    goal: Formula
    premises: tuple = ()

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "sequent": _show(self.context, self.goal),
        }
        if self.principal is not None:
            out["principal"] = render(self.principal)
        if self.premises:
            out["premises"] = [p.to_json() for p in self.premises]
        return out

    def lines(self, indent: int = 0) -> list[str]:
        p = f" [{render(self.principal)}]" if self.principal is not None else ""
        out = ["  " * indent + f"{_show(self.context, self.goal)}    ({self.rule}{p})"]
        for prem in self.premises:
            out.extend(prem.lines(indent + 1))
        return out


def _show(ctx, goal) -> str:
    c = ", ".join(sorted(render(f) for f in ctx))
    return f"{c} |- {render(goal)}" if c else f"|- {render(goal)}"


class _Engine:
    """G4ip search. ``efq`` enables the L-falsum axiom; without it F is an atom."""

    def __init__(self, efq: bool, budget: int):
        self.efq = efq
        self.budget = budget
        self.steps = 0
        self.memo: dict = {}

    def prove(self, ctx: frozenset, goal: Formula) -> Optional[Derivation]:
        key = (ctx, goal)
        if key in self.memo:
            return self.memo[key]
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"more than {self.budget} rule applications")
        d = self._search(ctx, goal)
        self.memo[key] = d
        return d

    def _one(self, rule, principal, ctx, goal, new_ctx, new_goal):
        d = self.prove(new_ctx, new_goal)
        return None if d is None else Derivation(rule, principal, ctx, goal, (d,))

    def _search(self, ctx: frozenset, goal: Formula) -> Optional[Derivation]:
        tg = type(goal)
        if tg is Top:
            return Derivation("Rtop", None, ctx, goal)
        if self.efq and BOT in ctx:
            return Derivation("Lbot", BOT, ctx, goal)
        if goal in ctx:
            return Derivation("ax", goal, ctx, goal)

        # invertible left rules without branching
        for f in ctx:
            tf = type(f)
            if tf is And:
                return self._one("Land", f, ctx, goal, (ctx - {f}) | {f.left, f.right}, goal)
            if tf is not Imp:
                continue
            a, b = f.left, f.right
            ta = type(a)
            rest = ctx - {f}
            if (ta is Atom or (ta is Bot and not self.efq)) and a in ctx:
                return self._one("Limp_atom", f, ctx, goal, rest | {b}, goal)
            if ta is Top:
                return self._one("Limp_top", f, ctx, goal, rest | {b}, goal)
            if ta is Bot and self.efq:
                return self._one("Limp_bot", f, ctx, goal, rest, goal)
            if ta is And:
                return self._one(
                    "Limp_and", f, ctx, goal, rest | {Imp(a.left, Imp(a.right, b))}, goal
                )
            if ta is Or:
                return self._one(
                    "Limp_or", f, ctx, goal, rest | {Imp(a.left, b), Imp(a.right, b)}, goal
                )

        # invertible right rules
        if tg is Imp:
            return self._one("Rimp", goal, ctx, goal, ctx | {goal.left}, goal.right)
        if tg is And:
            left = self.prove(ctx, goal.left)
            if left is None:
                return None
            right = self.prove(ctx, goal.right)
            if right is None:
                return None
            return Derivation("Rand", goal, ctx, goal, (left, right))

        # invertible branching left rule
        for f in ctx:
            if type(f) is Or:
                rest = ctx - {f}
                left = self.prove(rest | {f.left}, goal)
                if left is None:
                    return None
                right = self.prove(rest | {f.right}, goal)
                if right is None:
                    return None
                return Derivation("Lor", f, ctx, goal, (left, right))

        # non-invertible choices
        if tg is Or:
            for rule, side in (("Ror1", goal.left), ("Ror2", goal.right)):
                d = self.prove(ctx, side)
                if d is not None:
                    return Derivation(rule, goal, ctx, goal, (d,))
        for f in ctx:
            if type(f) is Imp and type(f.left) is Imp:
                c, d_, b = f.left.left, f.left.right, f.right
                rest = ctx - {f}
                first = self.prove(rest | {Imp(d_, b)}, f.left)
                if first is None:
                    continue
                second = self.prove(rest | {b}, goal)
                if second is not None:
                    return Derivation("Limp_imp", f, ctx, goal, (first, second))
        return None


def check_derivation(d: Derivation, efq: bool) -> bool:
    """Replay ``d`` and confirm every step is a correct rule instance."""
    ctx, goal, p, prem = d.context, d.goal, d.principal, d.premises

    def seqs(*expected):
        if len(prem) != len(expected):
            return False
        return all(
            q.context == c and q.goal == g and check_derivation(q, efq)
            for q, (c, g) in zip(prem, expected)
        )

    r = d.rule
    if r == "Rtop":
        return type(goal) is Top and not prem
    if r == "Lbot":
        return efq and BOT in ctx and not prem
    if r == "ax":
        return goal in ctx and not prem
    if r in ("Rimp", "Rand", "Ror1", "Ror2"):
        if p != goal:
            return False
        if r == "Rimp":
            return type(goal) is Imp and seqs((ctx | {goal.left}, goal.right))
        if r == "Rand":
            return type(goal) is And and seqs((ctx, goal.left), (ctx, goal.right))
        if type(goal) is not Or:
            return False
        return seqs((ctx, goal.left if r == "Ror1" else goal.right))
    if p not in ctx:
        return False
    rest = ctx - {p}
    tp = type(p)
    if r == "Land":
        return tp is And and seqs((rest | {p.left, p.right}, goal))
    if r == "Lor":
        return tp is Or and seqs((rest | {p.left}, goal), (rest | {p.right}, goal))
    if tp is not Imp:
        return False
    a, b = p.left, p.right
    ta = type(a)
    if r == "Limp_atom":
        return (ta is Atom or (ta is Bot and not efq)) and a in ctx and seqs((rest | {b}, goal))
    if r == "Limp_top":
        return ta is Top and seqs((rest | {b}, goal))
    if r == "Limp_bot":
        return efq and ta is Bot and seqs((rest, goal))
    if r == "Limp_and":
        return ta is And and seqs((rest | {Imp(a.left, Imp(a.right, b))}, goal))
    if r == "Limp_or":
        return ta is Or and seqs((rest | {Imp(a.left, b), Imp(a.right, b)}, goal))
    if r == "Limp_imp":
        return ta is Imp and seqs((rest | {Imp(a.right, b)}, a), (rest | {b}, goal))
    return False


# ------------------------------------------------------------------ front


@dataclass(frozen=True)
class ProveResult:
    logic: Logic
    verdict: Verdict
    sequent: Sequent
    reduced: Sequent
    derivation: Optional[Derivation] = None
    countermodel: Optional[KripkeModel] = None
    steps: int = field(default=0, compare=False)

    @property
    def provable(self) -> bool:
        return self.verdict is Verdict.PROVABLE

    def __bool__(self) -> bool:
        return self.provable

    def replay(self) -> bool:
        """Check the witness: derivation rules for constructive logics,
        refutation of the reduced sequent for countermodels."""
        if self.derivation is not None:
            if self.logic is Logic.CLASSICAL:
                return False
            root = self.derivation
            if root.context != self.reduced.context or root.goal != self.reduced.goal:
                return False
            return check_derivation(root, efq=self.logic is Logic.INTUITIONISTIC)
        if self.countermodel is not None:
            mode = Mode.INTUITIONISTIC if self.logic >= Logic.INTUITIONISTIC else Mode.MINIMAL_OR_POSITIVE
            return refutes(self.countermodel, self.reduced, mode)
        return True


def _one_world(assignment: dict[str, bool]) -> KripkeModel:
    return KripkeModel((0,), {(0, 0)}, {0: {a for a, v in assignment.items() if v}})


def prove(
    logic: Logic,
    s: Sequent,
    *,
    budget: int = DEFAULT_BUDGET,
    countermodel: bool = False,
    max_worlds: int = 4,
) -> ProveResult:
    """Decide ``s`` in ``logic``.

    With ``countermodel=True`` an unprovable verdict is accompanied by a
    refuting model when one exists within ``max_worlds`` worlds (classical
    countermodels always have a single world).
    """
    logic = Logic(logic)
    reduced = reduce_sequent(logic, s)
    if logic is Logic.CLASSICAL:
        if classical_valid(reduced):
            return ProveResult(logic, Verdict.PROVABLE, s, reduced)
        model = _one_world(classical_countermodel(reduced)) if countermodel else None
        return ProveResult(logic, Verdict.UNPROVABLE, s, reduced, countermodel=model)

    if type(reduced.goal) is Top:
        d = Derivation("Rtop", None, reduced.context, reduced.goal)
        return ProveResult(logic, Verdict.PROVABLE, s, reduced, derivation=d, steps=1)
    engine = _Engine(efq=logic is Logic.INTUITIONISTIC, budget=budget)
    d = engine.prove(reduced.context, reduced.goal)
    if d is not None:
        return ProveResult(logic, Verdict.PROVABLE, s, reduced, derivation=d, steps=engine.steps)
    model = None
    if countermodel:
        mode = Mode.INTUITIONISTIC if logic is Logic.INTUITIONISTIC else Mode.MINIMAL_OR_POSITIVE
        model = find_countermodel(reduced, mode, max_worlds)
    return ProveResult(
        logic, Verdict.UNPROVABLE, s, reduced, countermodel=model, steps=engine.steps
    )


def is_provable(logic: Logic, s: Sequent, **kw) -> bool:
    return prove(logic, s, **kw).provable
