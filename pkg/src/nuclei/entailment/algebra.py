"""Entailment relations presented by finite algebras and meet-semilattices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

from ..semantics import preorders
from .nucleus import check_nucleus
from .system import (
    MAX_CARRIER,
    CarrierTooLarge,
    EntailmentRelation,
    EntailmentSystem,
    NotALattice,
    NucleusMap,
    bits,
)

__all__ = [
    "substructure_system",
    "MeetSemilattice",
    "LocaleReport",
    "check_locale_nucleus",
    "locale_nucleus",
    "lattices",
    "chain",
]


def substructure_system(
    carrier: Sequence[Hashable],
    operations: Mapping[str, tuple[int, Callable]],
    nucleus: str,
    *,
    register_nucleus: bool = True,
) -> tuple[EntailmentSystem, NucleusMap]:
    """Substructure entailment: ``a1, ..., an |> f(a1, ..., an)`` for every operation.

    ``operations`` maps a name to ``(arity, function)``. ``nucleus`` names a
    unary operation used as j. With ``register_nucleus=False`` the axioms of
    j itself are left out, which generally breaks ``b |> jb``.
    """
    carrier = tuple(carrier)
    if len(carrier) > MAX_CARRIER:
        raise CarrierTooLarge(f"carrier of size {len(carrier)} exceeds {MAX_CARRIER}")
    if nucleus not in operations or operations[nucleus][0] != 1:
        raise ValueError(f"{nucleus!r} must name a unary operation")
    index = {e: i for i, e in enumerate(carrier)}
    axioms = set()
    for name, (arity, fn) in operations.items():
        if name == nucleus and not register_nucleus:
            continue
        for args in itertools.product(carrier, repeat=arity):
            value = fn(*args)
            if value not in index:
                raise ValueError(f"{name}{args} = {value!r} leaves the carrier")
            mask = 0
            for x in args:
                mask |= 1 << index[x]
            axioms.add((mask, index[value]))
    j_fn = operations[nucleus][1]
    j = NucleusMap(index[j_fn(x)] for x in carrier)
    return EntailmentSystem(carrier, sorted(axioms)), j


@dataclass(frozen=True)
class MeetSemilattice:
    """Elements ``0..n-1`` with ``meet[a][b]`` and a top element."""

    meet: tuple
    top: int

    def __post_init__(self):
        object.__setattr__(self, "meet", tuple(tuple(row) for row in self.meet))
        n = len(self.meet)
        m = self.meet
        if n == 0 or any(len(row) != n for row in m):
            raise NotALattice("meet table must be square and nonempty")
        if not 0 <= self.top < n:
            raise NotALattice("top is outside the carrier")
        r = range(n)
        if any(not 0 <= m[a][b] < n for a in r for b in r):
            raise NotALattice("meet table leaves the carrier")
        if any(m[a][a] != a for a in r):
            raise NotALattice("meet is not idempotent")
        if any(m[a][b] != m[b][a] for a in r for b in r):
            raise NotALattice("meet is not commutative")
        if any(m[m[a][b]][c] != m[a][m[b][c]] for a in r for b in r for c in r):
            raise NotALattice("meet is not associative")
        if any(m[self.top][a] != a for a in r):
            raise NotALattice("top is not a unit for meet")

    @property
    def size(self) -> int:
        return len(self.meet)

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def meet_of(self, mask: int) -> int:
        out = self.top
        for i in bits(mask):
            out = self.meet[out][i]
        return out

    def relation(self) -> EntailmentRelation:
        """``U |> a`` iff the meet of U is below a (the empty meet is top)."""
        n = self.size
        table = []
        for u in range(1 << n):
            mu = self.meet_of(u)
            table.append(sum(1 << a for a in range(n) if self.leq(mu, a)))
        return EntailmentRelation.from_table(tuple(range(n)), table)

    @classmethod
    def from_order(cls, n: int, leq: Callable[[int, int], bool]) -> "MeetSemilattice":
        tops = [t for t in range(n) if all(leq(a, t) for a in range(n))]
        if not tops:
            raise NotALattice("no top element")
        meet = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                lower = [c for c in range(n) if leq(c, a) and leq(c, b)]
                greatest = [c for c in lower if all(leq(d, c) for d in lower)]
                if not greatest:
                    raise NotALattice(f"{a} and {b} have no meet")
                meet[a][b] = greatest[0]
        return cls(meet, tops[0])


def locale_nucleus(lat: MeetSemilattice, j: NucleusMap) -> bool:
    """Inflationary, preserves binary meets up to ``<=``, and ``a <= jb`` gives ``ja <= jb``."""
    r = range(lat.size)
    leq, meet = lat.leq, lat.meet
    return (
        all(leq(a, j[a]) for a in r)
        and all(leq(meet[j[a]][j[b]], j[meet[a][b]]) for a in r for b in r)
        and all(leq(j[a], j[b]) for a in r for b in r if leq(a, j[b]))
    )


@dataclass(frozen=True)
class LocaleReport:
    entailment_nucleus: bool
    locale_nucleus: bool

    @property
    def agree(self) -> bool:
        return self.entailment_nucleus == self.locale_nucleus


def check_locale_nucleus(
    lat: MeetSemilattice, j: NucleusMap, rel: EntailmentRelation | None = None
) -> LocaleReport:
    """Compare the entailment-relation and locale notions of nucleus for ``j``.

    ``rel`` may be passed to reuse ``lat.relation()`` across many maps.
    """
    if len(j) != lat.size:
        raise ValueError("map and lattice differ in size")
    rel = lat.relation() if rel is None else rel
    return LocaleReport(check_nucleus(rel, j).is_nucleus, locale_nucleus(lat, j))


def chain(n: int) -> MeetSemilattice:
    return MeetSemilattice([[min(a, b) for b in range(n)] for a in range(n)], n - 1)


def _partial_orders(n: int):
    for rel in preorders(n):
        if all((b, a) not in rel for a, b in rel if a != b):
            yield rel


# the five lattices with five elements, as covering relations on 0..4
_FIVE = {
    "chain": [(0, 1), (1, 2), (2, 3), (3, 4)],
    "M3": [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    "N5": [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
    "diamond_top": [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
    "diamond_bottom": [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)],
}


def _from_covers(n: int, covers) -> MeetSemilattice:
    reach = {(a, a) for a in range(n)} | set(covers)
    changed = True
    while changed:
        new = {(a, d) for a, b in reach for c, d in reach if b == c} - reach
        changed = bool(new)
        reach |= new
    return MeetSemilattice.from_order(n, lambda a, b: (a, b) in reach)


def lattices(max_size: int = 4, *, include_five: bool = True) -> list[MeetSemilattice]:
    """Every labelled meet-semilattice with top on 1..max_size elements,
    optionally followed by the five unlabelled lattices of size five."""
    out = []
    for n in range(1, max_size + 1):
        for rel in _partial_orders(n):
            try:
                out.append(MeetSemilattice.from_order(n, lambda a, b, rel=rel: (a, b) in rel))
            except NotALattice:
                pass
    if include_five:
        out.extend(_from_covers(5, c) for c in _FIVE.values())
    return out
