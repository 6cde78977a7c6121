"""Entailment relations with nuclei: finite saturation, propositional provers
and machine checks of the conservation results that connect them."""

from .calculus import Logic, ProveResult, Verdict, is_provable, prove
from .formula import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Formula,
    Imp,
    Not,
    Or,
    ParseError,
    Sequent,
    Top,
    parse,
    parse_sequent,
    random_formula,
    random_sequent,
    render,
    render_sequent,
)
from .logical import (
    DF,
    GLIVENKO,
    PEIRCE,
    LogicalNucleus,
    apply_nucleus,
    deduction,
    parse_nucleus,
)
from .semantics import KripkeModel, Mode, classical_valid, find_countermodel

__version__ = "0.1.0"
