"""Propositional formulas: syntax tree, parser, renderer and a seeded generator.

Surface syntax (ASCII only)::

    imp := or ("->" imp)?
    or  := and ("|" and)*
    and := neg ("&" neg)*
    neg := "~" neg | atom | "T" | "F" | "(" imp ")"

Atoms match ``[a-z][a-zA-Z0-9_]*``. ``T`` is verum and ``F`` is falsum.
Sequents are written ``ctx1, ctx2 |- goal``; the context may be empty.
"""

from __future__ import annotations

import random
import re
import zlib
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

__all__ = [
    "Formula",
    "Atom",
    "Top",
    "Bot",
    "Not",
    "And",
    "Or",
    "Imp",
    "TOP",
    "BOT",
    "Sequent",
    "ParseError",
    "parse",
    "parse_sequent",
    "render",
    "render_sequent",
    "atoms",
    "size",
    "connectives",
    "subformulas",
    "random_formula",
    "random_sequent",
    "ATOM_RE",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class of the immutable formula tree.

    Hashes are computed once at construction from a process-independent
    digest of atom names, so set iteration order (and hence proof search
    order) is reproducible across interpreter runs.
    """

    __slots__ = ("_hash",)

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def _init(obj: Formula, **fields) -> None:
    for k, v in fields.items():
        object.__setattr__(obj, k, v)


class Atom(Formula):
    """Propositional variable. Names starting with ``_`` are reserved for
    atoms introduced by the provers and cannot be written in source text."""

    __slots__ = ("name",)
    name: str

    def __init__(self, name: str):
        if not isinstance(name, str) or not (ATOM_RE.match(name) or name[:1] == "_"):
            raise ValueError(f"invalid atom name {name!r}")
        _init(self, name=name, _hash=zlib.crc32(name.encode()) * 7 + 1)

    def __eq__(self, other):
        return self is other or (type(other) is Atom and other.name == self.name)

    __hash__ = Formula.__hash__

    def __reduce__(self):
        return (Atom, (self.name,))


class _Constant(Formula):
    __slots__ = ()
    _code = 0

    def __init__(self):
        _init(self, _hash=self._code)

    def __eq__(self, other):
        return type(other) is type(self)

    __hash__ = Formula.__hash__

    def __reduce__(self):
        return (type(self), ())


class Top(_Constant):
    __slots__ = ()
    _code = 0x7E1A


class Bot(_Constant):
    __slots__ = ()
    _code = 0x0B07


class Not(Formula):
    __slots__ = ("child",)
    child: Formula

    def __init__(self, child: Formula):
        _init(self, child=child, _hash=(child._hash * 1_000_003 + 0x4E) & 0xFFFFFFFFFFFF)

    def __eq__(self, other):
        return self is other or (
            type(other) is Not and other._hash == self._hash and other.child == self.child
        )

    __hash__ = Formula.__hash__

    def __reduce__(self):
        return (Not, (self.child,))


class _Binary(Formula):
    __slots__ = ("left", "right")
    _code = 0
    left: Formula
    right: Formula

    def __init__(self, left: Formula, right: Formula):
        h = (left._hash * 1_000_003 + right._hash) * 31 + self._code
        _init(self, left=left, right=right, _hash=h & 0xFFFFFFFFFFFF)

    def __eq__(self, other):
        return self is other or (
            type(other) is type(self)
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    __hash__ = Formula.__hash__

    def __reduce__(self):
        return (type(self), (self.left, self.right))


class And(_Binary):
    __slots__ = ()
    _code = 0xA


class Or(_Binary):
    __slots__ = ()
    _code = 0xB


class Imp(_Binary):
    __slots__ = ()
    _code = 0xC


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Sequent:
    """A finite set of hypotheses and a single goal."""

    context: frozenset
    goal: Formula

    def __init__(self, context: Iterable[Formula], goal: Formula):
        object.__setattr__(self, "context", frozenset(context))
        object.__setattr__(self, "goal", goal)

    def __str__(self) -> str:
        return render_sequent(self)


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    """Malformed input; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, offset: int, expected: Iterable[str], found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected)) or "nothing"
        super().__init__(f"at offset {offset}: expected {exp}, found {found}")


_ATOM_START = frozenset({"~", "T", "F", "(", "identifier"})
_WORD_CHARS = frozenset(b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")
_SYMBOLS = {ord("~"): "~", ord("&"): "&", ord("("): "(", ord(")"): ")", ord(","): ","}


def _tokenize(data: bytes) -> list[tuple[str, str, int]]:
    """Return (kind, text, offset) triples ending with an ``eof`` token."""
    toks = []
    i, n = 0, len(data)
    while i < n:
        c = data[i]
        if c in b" \t\r\n":
            i += 1
        elif c in _SYMBOLS:
            toks.append((_SYMBOLS[c], _SYMBOLS[c], i))
            i += 1
        elif c == ord("|"):
            if data[i + 1 : i + 2] == b"-":
                toks.append(("|-", "|-", i))
                i += 2
            else:
                toks.append(("|", "|", i))
                i += 1
        elif c == ord("-"):
            if data[i + 1 : i + 2] != b">":
                raise ParseError(i, {"->"}, _describe(data, i))
            toks.append(("->", "->", i))
            i += 2
        elif c in _WORD_CHARS:
            j = i
            while j < n and data[j] in _WORD_CHARS:
                j += 1
            word = data[i:j].decode("ascii")
            if word in ("T", "F"):
                toks.append((word, word, i))
            elif ATOM_RE.match(word):
                toks.append(("identifier", word, i))
            else:
                raise ParseError(i, _ATOM_START, repr(word))
            i = j
        else:
            raise ParseError(i, _ATOM_START | {"&", "|", "->", ")"}, _describe(data, i))
    toks.append(("eof", "", n))
    return toks


def _describe(data: bytes, i: int) -> str:
    return repr(data[i : i + 1])


class _Parser:
    def __init__(self, data: bytes):
        self.toks = _tokenize(data)
        self.pos = 0

    def peek(self) -> str:
        return self.toks[self.pos][0]

    def fail(self, expected: Iterable[str]):
        kind, text, off = self.toks[self.pos]
        raise ParseError(off, expected, "end of input" if kind == "eof" else repr(text))

    def expect(self, kind: str) -> None:
        if self.peek() != kind:
            self.fail({kind})
        self.pos += 1

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.pos += 1
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.pos += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.peek() == "&":
            self.pos += 1
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        kind, text, _ = self.toks[self.pos]
        if kind == "~":
            self.pos += 1
            return Not(self.neg())
        if kind == "identifier":
            self.pos += 1
            return Atom(text)
        if kind == "T":
            self.pos += 1
            return TOP
        if kind == "F":
            self.pos += 1
            return BOT
        if kind == "(":
            self.pos += 1
            f = self.imp()
            self.expect(")")
            return f
        self.fail(_ATOM_START)

    def finish(self, follow: set[str]) -> None:
        if self.peek() != "eof":
            self.fail(follow)


def _as_bytes(text: Union[str, bytes]) -> bytes:
    return text.encode("utf-8", "surrogatepass") if isinstance(text, str) else bytes(text)


def parse(text: Union[str, bytes]) -> Formula:
    """Parse a single formula. Raises :class:`ParseError` on malformed input."""
    p = _Parser(_as_bytes(text))
    f = p.imp()
    p.finish({"&", "|", "->", "eof"})
    return f


def parse_sequent(text: Union[str, bytes]) -> Sequent:
    """Parse ``a, b |- c``. Without a turnstile the whole text is the goal."""
    p = _Parser(_as_bytes(text))
    if not any(t[0] == "|-" for t in p.toks):
        goal = p.imp()
        p.finish({"&", "|", "->", "eof"})
        return Sequent((), goal)
    context = []
    if p.peek() != "|-":
        context.append(p.imp())
        while p.peek() == ",":
            p.pos += 1
            context.append(p.imp())
    if p.peek() != "|-":
        p.fail({",", "|-", "&", "|", "->"})
    p.pos += 1
    goal = p.imp()
    p.finish({"&", "|", "->", "eof"})
    return Sequent(context, goal)


# -------------------------------------------------------------- rendering

_IMP, _OR, _AND, _NEG = 1, 2, 3, 4


def _level(f: Formula) -> int:
    t = type(f)
    if t is Imp:
        return _IMP
    if t is Or:
        return _OR
    if t is And:
        return _AND
    return _NEG


def _render(f: Formula, min_level: int) -> str:
    t = type(f)
    if t is Atom:
        return f.name
    if t is Top:
        return "T"
    if t is Bot:
        return "F"
    if t is Not:
        return "~" + _render(f.child, _NEG)
    lvl = _level(f)
    if t is Imp:
        s = f"{_render(f.left, _IMP + 1)} -> {_render(f.right, _IMP)}"
    else:
        op = " | " if t is Or else " & "
        s = _render(f.left, lvl) + op + _render(f.right, lvl + 1)
    return f"({s})" if lvl < min_level else s


def render(f: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    return _render(f, _IMP)


def render_sequent(s: Sequent) -> str:
    ctx = ", ".join(sorted(render(f) for f in s.context))
    return f"{ctx} |- {render(s.goal)}" if ctx else f"|- {render(s.goal)}"


# -------------------------------------------------------------- utilities


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield every subformula occurrence, children before parents."""
    t = type(f)
    if t is Not:
        yield from subformulas(f.child)
    elif isinstance(f, _Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    yield f


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if type(g) is Atom}


def size(f: Formula) -> int:
    """Number of nodes in the tree."""
    return sum(1 for _ in subformulas(f))


def connectives(f: Formula) -> int:
    return sum(1 for g in subformulas(f) if type(g) in (Not, And, Or, Imp))


# -------------------------------------------------------------- generator

_NAMES = "pqrstuvw"


def atom_name(i: int) -> str:
    return _NAMES[i] if i < len(_NAMES) else f"x{i}"


def random_formula(atom_count: int, max_connectives: int, seed: int) -> Formula:
    """Deterministic random formula over atoms ``p, q, r, ...``.

    Distribution: the connective count k is uniform on 0..max_connectives.
    A tree with k connectives is a leaf when k == 0 (an atom with
    probability 0.8, otherwise T or F with equal odds); otherwise the root
    is ``~`` with probability 1/4 over a k-1 tree, else one of ``& | ->``
    uniformly, with the remaining k-1 connectives split uniformly between
    the children.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be >= 1")
    rng = random.Random(seed)
    return _grow(rng, atom_count, rng.randint(0, max(0, max_connectives)))


def _grow(rng: random.Random, n: int, k: int) -> Formula:
    if k == 0:
        r = rng.random()
        if r < 0.8:
            return Atom(atom_name(rng.randrange(n)))
        return TOP if r < 0.9 else BOT
    if rng.random() < 0.25:
        return Not(_grow(rng, n, k - 1))
    op = rng.choice((And, Or, Imp))
    left = rng.randint(0, k - 1)
    return op(_grow(rng, n, left), _grow(rng, n, k - 1 - left))


def random_sequent(
    atom_count: int, max_connectives: int, max_context: int, seed: int
) -> Sequent:
    """Random sequent: up to ``max_context`` hypotheses, each and the goal
    drawn with :func:`random_formula` under derived seeds."""
    rng = random.Random(seed)
    n_ctx = rng.randint(0, max_context)
    ctx = [
        random_formula(atom_count, max_connectives, rng.getrandbits(64))
        for _ in range(n_ctx)
    ]
    goal = random_formula(atom_count, max_connectives, rng.getrandbits(64))
    return Sequent(ctx, goal)
