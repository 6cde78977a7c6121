"""Finite entailment systems and their saturation.

Subsets of the carrier are int bitmasks; bit ``i`` stands for
``carrier[i]``. A relation is stored per element as the antichain of its
minimal generating sets, so monotonicity is implicit: ``U |> a`` iff some
generator of ``a`` is contained in ``U``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator, Mapping, Optional, Sequence

__all__ = [
    "MAX_CARRIER",
    "CarrierTooLarge",
    "NotANucleus",
    "NotALattice",
    "RuleInstance",
    "EntailmentSystem",
    "EntailmentRelation",
    "NucleusMap",
    "saturate",
    "entails",
    "bits",
    "law_violations",
    "load_system",
    "dump_system",
]

MAX_CARRIER = 14


class CarrierTooLarge(ValueError):
    pass


class NotANucleus(ValueError):
    pass


class NotALattice(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


Pair = tuple  # (mask, element index)


@dataclass(frozen=True)
class RuleInstance:
    """If every premise ``U_i |> b_i`` holds then the conclusion holds.

    Zero-premise instances are axioms and must be registered as such.
    """

    premises: tuple
    conclusion: Pair

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(tuple(p) for p in self.premises))
        object.__setattr__(self, "conclusion", tuple(self.conclusion))
        if not self.premises:
            raise ValueError("a rule instance needs at least one premise; use an axiom")


@dataclass(frozen=True)
class NucleusMap:
    """A total self-map of the carrier, by element index."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))

    def __getitem__(self, a: int) -> int:
        return self.images[a]

    def __len__(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "NucleusMap":
        return cls(range(n))

    def is_identity(self) -> bool:
        return all(i == a for a, i in enumerate(self.images))

    def image_mask(self) -> int:
        m = 0
        for i in self.images:
            m |= 1 << i
        return m


@dataclass(frozen=True)
class EntailmentSystem:
    """A finite carrier with axioms ``(mask, element)`` and rule instances."""

    carrier: tuple
    axioms: tuple = ()
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "axioms", tuple(tuple(a) for a in self.axioms))
        object.__setattr__(self, "rules", tuple(self.rules))
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier elements must be distinct")
        n = len(self.carrier)
        pairs = list(self.axioms)
        for r in self.rules:
            if not isinstance(r, RuleInstance):
                raise TypeError("rules must be RuleInstance objects")
            pairs.extend(r.premises)
            pairs.append(r.conclusion)
        for mask, a in pairs:
            if mask >> n or not 0 <= a < n:
                raise ValueError(f"pair {(mask, a)} refers outside the carrier")

    @property
    def size(self) -> int:
        return len(self.carrier)

    def index(self, element: Hashable) -> int:
        return self._index[element]

    @functools.cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.carrier)}

    def mask(self, elements: Iterable[Hashable]) -> int:
        m = 0
        for e in elements:
            m |= 1 << self._index[e]
        return m

    def pair(self, elements: Iterable[Hashable], element: Hashable) -> Pair:
        return (self.mask(elements), self._index[element])

    @classmethod
    def build(
        cls,
        carrier: Sequence[Hashable],
        axioms: Iterable = (),
        rules: Iterable = (),
    ) -> "EntailmentSystem":
        """Build from element names.

        ``axioms`` is an iterable of ``(from_elements, to_element)`` and
        ``rules`` of ``(premises, conclusion)`` with pairs in the same shape.
        """
        probe = cls(tuple(carrier))
        ax = [probe.pair(u, a) for u, a in axioms]
        rs = [
            RuleInstance([probe.pair(u, a) for u, a in prem], probe.pair(*concl))
            for prem, concl in rules
        ]
        return cls(probe.carrier, ax, rs)

    def nucleus(self, mapping: Mapping) -> NucleusMap:
        """Convert an element-to-element mapping into a :class:`NucleusMap`."""
        missing = [e for e in self.carrier if e not in mapping]
        if missing:
            raise ValueError(f"nucleus is not total; missing {missing!r}")
        return NucleusMap(self._index[mapping[e]] for e in self.carrier)

    def with_axioms(self, extra: Iterable[Pair]) -> "EntailmentSystem":
        return EntailmentSystem(self.carrier, self.axioms + tuple(extra), self.rules)

    def without_rules(self) -> "EntailmentSystem":
        return EntailmentSystem(self.carrier, self.axioms, ())

    def show_pair(self, pair: Pair) -> str:
        mask, a = pair
        lhs = ", ".join(str(self.carrier[i]) for i in bits(mask))
        return f"{lhs} |> {self.carrier[a]}" if lhs else f"|> {self.carrier[a]}"


class EntailmentRelation:
    """An entailment relation on a finite carrier, by minimal generators."""

    def __init__(self, carrier: Sequence, gens: Iterable[Iterable[int]]):
        self.carrier = tuple(carrier)
        self.gens = tuple(
            tuple(sorted(set(g), key=lambda m: (m.bit_count(), m)))
            for g in gens
        )
        if len(self.gens) != len(self.carrier):
            raise ValueError("one generator list per carrier element is required")

    @property
    def size(self) -> int:
        return len(self.carrier)

    def holds(self, mask: int, a: int) -> bool:
        return any(not g & ~mask for g in self.gens[a])

    def closure(self, mask: int) -> int:
        """Bitmask of every element entailed by ``mask``."""
        out = 0
        for a, gs in enumerate(self.gens):
            if any(not g & ~mask for g in gs):
                out |= 1 << a
        return out

    @functools.cached_property
    def table(self) -> tuple:
        """Dense closure table indexed by subset mask."""
        return tuple(self.closure(m) for m in range(1 << self.size))

    def entails(self, elements: Iterable[Hashable], element: Hashable) -> bool:
        idx = {e: i for i, e in enumerate(self.carrier)}
        m = 0
        for e in elements:
            m |= 1 << idx[e]
        return self.holds(m, idx[element])

    def pairs(self) -> Iterator[Pair]:
        for a, gs in enumerate(self.gens):
            for g in gs:
                yield (g, a)

    def __le__(self, other: "EntailmentRelation") -> bool:
        if self.carrier != other.carrier:
            raise ValueError("relations over different carriers")
        return all(other.holds(g, a) for g, a in self.pairs())

    def __ge__(self, other: "EntailmentRelation") -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EntailmentRelation):
            return NotImplemented
        return self.carrier == other.carrier and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.carrier, self.gens))

    def __repr__(self) -> str:
        return f"EntailmentRelation(carrier={self.carrier!r}, gens={self.gens!r})"

    def is_antichain(self) -> bool:
        return all(
            (g & ~h) != 0 for gs in self.gens for g in gs for h in gs if g != h
        )

    @classmethod
    def from_table(cls, carrier: Sequence, table: Sequence[int]) -> "EntailmentRelation":
        """Minimal generators of a dense closure table (``table[U]`` = entailed mask)."""
        n = len(carrier)
        order = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
        gens: list[list[int]] = [[] for _ in range(n)]
        for m in order:
            for a in bits(table[m]):
                if not any(not g & ~m for g in gens[a]):
                    gens[a].append(m)
        return cls(carrier, gens)

    def to_json(self) -> dict:
        return {
            "carrier": [str(e) for e in self.carrier],
            "generators": {
                str(self.carrier[a]): [[str(self.carrier[i]) for i in bits(g)] for g in gs]
                for a, gs in enumerate(self.gens)
            },
        }


def _add(gens: list, mask: int) -> bool:
    """Insert ``mask`` into the antichain ``gens`` unless it is already covered."""
    for g in gens:
        if not g & ~mask:
            return False
    gens[:] = [g for g in gens if mask & ~g] + [mask]
    return True


def saturate(sys: EntailmentSystem, max_carrier: int = MAX_CARRIER) -> EntailmentRelation:
    """Least relation containing the axioms and closed under (R), (M), (T) and the rules."""
    n = sys.size
    if n > min(max_carrier, MAX_CARRIER):
        raise CarrierTooLarge(f"carrier of size {n} exceeds {min(max_carrier, MAX_CARRIER)}")
    gens: list[list[int]] = [[1 << a] for a in range(n)]
    for mask, a in sys.axioms:
        _add(gens[a], mask)

    def holds(mask, a):
        return any(not g & ~mask for g in gens[a])

    pending_rules = list(sys.rules)
    changed = True
    while changed:
        changed = False
        # cut: V |> b and W |> a with b in W give V u (W - b) |> a
        for a in range(n):
            for w in list(gens[a]):
                for b in bits(w & ~(1 << a)):
                    rest = w & ~(1 << b)
                    for v in list(gens[b]):
                        if _add(gens[a], v | rest):
                            changed = True
        fired = []
        for r in pending_rules:
            if all(holds(m, b) for m, b in r.premises):
                fired.append(r)
                if _add(gens[r.conclusion[1]], r.conclusion[0]):
                    changed = True
        if fired:
            pending_rules = [r for r in pending_rules if r not in fired]
    return EntailmentRelation(sys.carrier, gens)


def entails(rel: EntailmentRelation, elements: Iterable[Hashable], element: Hashable) -> bool:
    return rel.entails(elements, element)


def law_violations(rel: EntailmentRelation) -> list[str]:
    """Failures of (R) or (T); (M) holds by construction of the representation."""
    out = []
    for a in range(rel.size):
        if not rel.holds(1 << a, a):
            out.append(f"(R) fails at {rel.carrier[a]!r}")
    for a, gs in enumerate(rel.gens):
        for w in gs:
            for b in bits(w):
                rest = w & ~(1 << b)
                for v in rel.gens[b]:
                    if not rel.holds(v | rest, a):
                        out.append(f"(T) fails: {bin(v)} via {rel.carrier[b]!r} into {bin(w)} |> {rel.carrier[a]!r}")
    return out


# ------------------------------------------------------------------- JSON


def _pair_from_json(sys_probe: EntailmentSystem, obj: Mapping) -> Pair:
    return sys_probe.pair(obj.get("from", []), obj["to"])


def load_system(data: Mapping[str, Any]) -> tuple[EntailmentSystem, Optional[NucleusMap]]:
    """Parse the JSON system format; returns the system and optional nucleus."""
    probe = EntailmentSystem(tuple(data["carrier"]))
    axioms = [_pair_from_json(probe, a) for a in data.get("axioms", [])]
    rules = [
        RuleInstance(
            [_pair_from_json(probe, p) for p in r["premises"]],
            _pair_from_json(probe, r["conclusion"]),
        )
        for r in data.get("rules", [])
    ]
    sys = EntailmentSystem(probe.carrier, axioms, rules)
    j = sys.nucleus(data["nucleus"]) if data.get("nucleus") is not None else None
    return sys, j


def _pair_to_json(sys: EntailmentSystem, pair: Pair) -> dict:
    mask, a = pair
    return {"from": [sys.carrier[i] for i in bits(mask)], "to": sys.carrier[a]}


def dump_system(sys: EntailmentSystem, j: Optional[NucleusMap] = None) -> dict:
    out = {
        "carrier": list(sys.carrier),
        "axioms": [_pair_to_json(sys, p) for p in sys.axioms],
        "rules": [
            {
                "premises": [_pair_to_json(sys, p) for p in r.premises],
                "conclusion": _pair_to_json(sys, r.conclusion),
            }
            for r in sys.rules
        ],
    }
    if j is not None:
        out["nucleus"] = {sys.carrier[a]: sys.carrier[j[a]] for a in range(sys.size)}
    return out
