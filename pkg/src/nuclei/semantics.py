"""Semantic oracles: classical truth tables and finite Kripke models.

Both oracles are independent of the proof search in :mod:`nuclei.calculus`
and exist to cross-check it.

Kripke search enumerates rooted partial orders (world 0 below every other
world) with all monotone valuations, vectorised over valuations with numpy.
Every countermodel on a preorder with at most ``k`` worlds collapses to a
rooted partial order with at most ``k`` worlds (restrict to the cone of the
refuting world, then identify worlds in the same cluster), so the search
loses nothing against enumerating all preorders.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

from .formula import And, Atom, Bot, Formula, Not, Or, Sequent, Top, atoms, subformulas

__all__ = [
    "Mode",
    "BOT_ATOM",
    "AtomLimitExceeded",
    "ModeViolation",
    "MAX_CLASSICAL_ATOMS",
    "classical_valid",
    "classical_countermodel",
    "KripkeModel",
    "kripke_forces",
    "refutes",
    "find_countermodel",
    "KripkeSearch",
    "rooted_posets",
    "preorders",
    "upsets",
    "enumerate_models",
]

MAX_CLASSICAL_ATOMS = 24
MAX_WORLDS = 5
BOT_ATOM = "_bot"


class Mode(enum.Enum):
    INTUITIONISTIC = "intuitionistic"
    # falsum is the ordinary atom ``_bot``; negation must be reduced away first
    MINIMAL_OR_POSITIVE = "minimal"


class AtomLimitExceeded(ValueError):
    pass


class ModeViolation(ValueError):
    pass


# -------------------------------------------------------------- classical


def _sequent_atoms(s: Sequent) -> list[str]:
    names: set[str] = set(atoms(s.goal))
    for f in s.context:
        names |= atoms(f)
    return sorted(names)


def _column(i: int, nrows: int) -> int:
    # bit r of the result is bit i of r
    period = 1 << (i + 1)
    col = ((1 << (1 << i)) - 1) << (1 << i)
    length = period
    while length < nrows:
        col |= col << length
        length <<= 1
    return col & ((1 << nrows) - 1)


def _truth_columns(s: Sequent) -> tuple[int, int, int, list[str]]:
    names = _sequent_atoms(s)
    if len(names) > MAX_CLASSICAL_ATOMS:
        raise AtomLimitExceeded(
            f"{len(names)} atoms exceeds the truth-table limit of {MAX_CLASSICAL_ATOMS}"
        )
    nrows = 1 << len(names)
    full = (1 << nrows) - 1
    cols = {name: _column(i, nrows) for i, name in enumerate(names)}
    memo: dict[Formula, int] = {}

    def ev(f: Formula) -> int:
        hit = memo.get(f)
        if hit is not None:
            return hit
        t = type(f)
        if t is Atom:
            v = cols[f.name]
        elif t is Top:
            v = full
        elif t is Bot:
            v = 0
        elif t is Not:
            v = full ^ ev(f.child)
        elif t is And:
            v = ev(f.left) & ev(f.right)
        elif t is Or:
            v = ev(f.left) | ev(f.right)
        else:
            v = (full ^ ev(f.left)) | ev(f.right)
        memo[f] = v
        return v

    ctx = full
    for f in s.context:
        ctx &= ev(f)
    return ctx, ev(s.goal), full, names


def classical_valid(s: Sequent) -> bool:
    """Truth-table consequence: every row satisfying the context satisfies the goal."""
    ctx, goal, full, _ = _truth_columns(s)
    return ctx & (full ^ goal) == 0


def classical_countermodel(s: Sequent) -> Optional[dict[str, bool]]:
    """Return the first falsifying assignment, or None if the sequent is valid."""
    ctx, goal, full, names = _truth_columns(s)
    bad = ctx & (full ^ goal)
    if not bad:
        return None
    row = (bad & -bad).bit_length() - 1
    return {name: bool(row >> i & 1) for i, name in enumerate(names)}


# ------------------------------------------------------------------ Kripke


@dataclass(frozen=True)
class KripkeModel:
    """A finite Kripke model. ``order`` holds the pairs (w, v) with w <= v."""

    worlds: tuple
    order: frozenset
    valuation: Mapping

    def __post_init__(self):
        worlds = tuple(self.worlds)
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "order", frozenset(self.order))
        val = {w: frozenset(self.valuation.get(w, ())) for w in worlds}
        object.__setattr__(self, "valuation", val)
        ws = set(worlds)
        if len(ws) != len(worlds):
            raise ValueError("duplicate world ids")
        for w, v in self.order:
            if w not in ws or v not in ws:
                raise ValueError(f"order pair {(w, v)} mentions an unknown world")
        for w in worlds:
            if (w, w) not in self.order:
                raise ValueError(f"order is not reflexive at {w!r}")
        for (a, b), (c, d) in itertools.product(self.order, repeat=2):
            if b == c and (a, d) not in self.order:
                raise ValueError(f"order is not transitive: {a!r}<={b!r}<={d!r}")
        for w, v in self.order:
            if not val[w] <= val[v]:
                raise ValueError(f"valuation is not monotone along {w!r} <= {v!r}")

    def __hash__(self):
        return hash((self.worlds, self.order, tuple(sorted(
            (str(w), tuple(sorted(a))) for w, a in self.valuation.items()))))

    def above(self, w) -> list:
        return [v for v in self.worlds if (w, v) in self.order]

    def to_json(self) -> dict:
        return {
            "worlds": list(self.worlds),
            "order": sorted([list(p) for p in self.order]),
            "valuation": {str(w): sorted(self.valuation[w]) for w in self.worlds},
        }


def kripke_forces(m: KripkeModel, w, f: Formula, mode: Mode) -> bool:
    """Forcing relation, evaluated directly from the clauses."""
    if w not in m.valuation:
        raise ValueError(f"unknown world {w!r}")
    t = type(f)
    if t is Atom:
        return f.name in m.valuation[w]
    if t is Top:
        return True
    if t is Bot:
        return mode is Mode.MINIMAL_OR_POSITIVE and BOT_ATOM in m.valuation[w]
    if t is Not:
        if mode is Mode.MINIMAL_OR_POSITIVE:
            raise ModeViolation("negation must be reduced before minimal/positive evaluation")
        return not any(kripke_forces(m, v, f.child, mode) for v in m.above(w))
    if t is And:
        return kripke_forces(m, w, f.left, mode) and kripke_forces(m, w, f.right, mode)
    if t is Or:
        return kripke_forces(m, w, f.left, mode) or kripke_forces(m, w, f.right, mode)
    return all(
        not kripke_forces(m, v, f.left, mode) or kripke_forces(m, v, f.right, mode)
        for v in m.above(w)
    )


def refutes(m: KripkeModel, s: Sequent, mode: Mode) -> bool:
    """True if some world forces the whole context but not the goal."""
    return any(
        all(kripke_forces(m, w, c, mode) for c in s.context)
        and not kripke_forces(m, w, s.goal, mode)
        for w in m.worlds
    )


# ------------------------------------------------------- frame enumeration


def _transitive(k: int, rel: set) -> bool:
    return all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c)


@functools.lru_cache(maxsize=None)
def preorders(k: int) -> tuple[frozenset, ...]:
    """All reflexive-transitive relations on worlds 0..k-1 (labelled)."""
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    refl = {(a, a) for a in range(k)}
    out = []
    for bits in range(1 << len(pairs)):
        rel = refl | {p for i, p in enumerate(pairs) if bits >> i & 1}
        if _transitive(k, rel):
            out.append(frozenset(rel))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def rooted_posets(k: int) -> tuple[frozenset, ...]:
    """Partial orders on 0..k-1 in which world 0 lies below every world."""
    if k < 1:
        return ()
    rest = [p for p in preorders(k - 1) if all((b, a) not in p for a, b in p if a != b)]
    out = []
    for p in rest:
        rel = {(a + 1, b + 1) for a, b in p} | {(0, w) for w in range(k)}
        out.append(frozenset(rel))
    return tuple(out)


def upsets(k: int, order: Iterable) -> list[int]:
    """Up-closed subsets of 0..k-1, as bitmasks in increasing order."""
    order = list(order)
    return [
        s
        for s in range(1 << k)
        if all(not (s >> a & 1) or (s >> b & 1) for a, b in order)
    ]


def enumerate_models(names: Iterable[str], max_worlds: int) -> Iterator[KripkeModel]:
    """Every rooted-poset model with 1..max_worlds worlds over ``names``."""
    names = list(names)
    for k in range(1, max_worlds + 1):
        for order in rooted_posets(k):
            ups = upsets(k, order)
            for combo in itertools.product(ups, repeat=len(names)):
                val = {
                    w: {n for n, u in zip(names, combo) if u >> w & 1} for w in range(k)
                }
                yield KripkeModel(tuple(range(k)), order, val)


class _Block:
    """A batch of models over the same number of worlds, held as bitmask arrays."""

    def __init__(self, k, frames, frame_ids, up, val):
        self.k = k
        self.frames = frames
        self.frame_ids = frame_ids  # (M,) index into frames
        self.up = up  # (k, M) uint8: up-set of world w in each model
        self.val = val  # atom -> (M,) uint8 worlds where the atom holds
        self.size = len(frame_ids)
        self.full = np.uint8((1 << k) - 1)
        self.memo: dict[Formula, np.ndarray] = {}

    def model(self, i: int, names) -> KripkeModel:
        order = self.frames[self.frame_ids[i]]
        valuation = {
            w: {a for a in names if int(self.val[a][i]) >> w & 1} for w in range(self.k)
        }
        return KripkeModel(tuple(range(self.k)), order, valuation)


def _blocks(names: tuple, k: int, chunk: int) -> Iterator[_Block]:
    frames = rooted_posets(k)
    a = len(names)
    pend_ids, pend_up, pend_val, pending = [], [], [], 0

    def flush():
        return _Block(
            k,
            frames,
            np.concatenate(pend_ids),
            np.concatenate(pend_up, axis=1),
            {n: np.concatenate([v[i] for v in pend_val]) for i, n in enumerate(names)},
        )

    for fi, order in enumerate(frames):
        ups = np.array(upsets(k, order), dtype=np.uint8)
        ups_w = np.array(
            [sum(1 << v for v in range(k) if (w, v) in order) for w in range(k)],
            dtype=np.uint8,
        )
        total = len(ups) ** a
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            vals = []
            for _ in range(a):
                vals.append(ups[idx % len(ups)])
                idx = idx // len(ups)
            m = len(vals[0]) if a else min(total, start + chunk) - start
            pend_ids.append(np.full(m, fi, dtype=np.int32))
            pend_up.append(np.repeat(ups_w[:, None], m, axis=1))
            pend_val.append(vals)
            pending += m
            if pending >= chunk:
                yield flush()
                pend_ids, pend_up, pend_val, pending = [], [], [], 0
    if pending:
        yield flush()


class KripkeSearch:
    """Countermodel search over rooted models with up to ``max_worlds`` worlds.

    With ``memo=True`` the model batches and the truth sets of every formula
    seen are kept, which makes many queries over one atom set cheap.
    """

    def __init__(self, names: Iterable[str], mode: Mode, max_worlds: int, *,
                 memo: bool = False, chunk: int = 1 << 16):
        if not 1 <= max_worlds <= MAX_WORLDS:
            raise ValueError(f"max_worlds must be in 1..{MAX_WORLDS}")
        self.names = tuple(sorted(set(names)))
        self.mode = mode
        self.max_worlds = max_worlds
        self.memo = memo
        self.chunk = chunk
        self._cache: dict[int, list[_Block]] = {}

    def _iter_blocks(self, k: int) -> Iterator[_Block]:
        if not self.memo:
            yield from _blocks(self.names, k, self.chunk)
            return
        if k not in self._cache:
            self._cache[k] = list(_blocks(self.names, k, self.chunk))
        yield from self._cache[k]

    def _truth(self, b: _Block, f: Formula, memo: dict) -> np.ndarray:
        hit = memo.get(f)
        if hit is not None:
            return hit
        t = type(f)
        if t is Atom:
            if f.name not in b.val:
                raise ValueError(f"atom {f.name!r} is outside the search space")
            r = b.val[f.name]
        elif t is Top:
            r = np.full(b.size, b.full, dtype=np.uint8)
        elif t is Bot:
            if self.mode is Mode.MINIMAL_OR_POSITIVE:
                r = self._truth(b, Atom(BOT_ATOM), memo)
            else:
                r = np.zeros(b.size, dtype=np.uint8)
        elif t is Not:
            if self.mode is Mode.MINIMAL_OR_POSITIVE:
                raise ModeViolation("negation must be reduced before minimal/positive search")
            c = self._truth(b, f.child, memo)
            r = np.zeros(b.size, dtype=np.uint8)
            for w in range(b.k):
                r |= ((b.up[w] & c) == 0).astype(np.uint8) << w
        elif t is And:
            r = self._truth(b, f.left, memo) & self._truth(b, f.right, memo)
        elif t is Or:
            r = self._truth(b, f.left, memo) | self._truth(b, f.right, memo)
        else:
            left = self._truth(b, f.left, memo)
            bad = left & ~self._truth(b, f.right, memo)
            r = np.zeros(b.size, dtype=np.uint8)
            for w in range(b.k):
                r |= ((b.up[w] & bad) == 0).astype(np.uint8) << w
        memo[f] = r
        return r

    def find(self, s: Sequent) -> Optional[KripkeModel]:
        """Smallest countermodel found (fewest worlds first), or None."""
        if self.mode is Mode.MINIMAL_OR_POSITIVE:
            for f in (s.goal, *s.context):
                if any(type(g) is Not for g in subformulas(f)):
                    raise ModeViolation("negation must be reduced before minimal/positive search")
        for k in range(1, self.max_worlds + 1):
            for b in self._iter_blocks(k):
                memo = b.memo if self.memo else {}
                ok = np.ones(b.size, dtype=bool)
                for c in s.context:
                    ok &= (self._truth(b, c, memo) & 1).astype(bool)
                ok &= (self._truth(b, s.goal, memo) & 1) == 0
                hits = np.flatnonzero(ok)
                if len(hits):
                    return b.model(int(hits[0]), self.names)
        return None


def search_atoms(s: Sequent, mode: Mode) -> set[str]:
    names = set(_sequent_atoms(s))
    if mode is Mode.MINIMAL_OR_POSITIVE:
        if any(type(g) is Bot for f in (s.goal, *s.context) for g in subformulas(f)):
            names.add(BOT_ATOM)
    return names


def find_countermodel(s: Sequent, mode: Mode, max_worlds: int) -> Optional[KripkeModel]:
    """Search for a model with at most ``max_worlds`` worlds refuting ``s``.

    Returns None when no such model exists; that is not a proof of validity.
    """
    return KripkeSearch(search_atoms(s, mode), mode, max_worlds).find(s)
