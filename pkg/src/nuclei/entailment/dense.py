"""Dense reference saturation, kept independent of the generator-based engine.

It stores the full closure table ``C[U] = {a : U |> a}`` over every subset
and iterates single-step consequences until nothing changes:

* (M) through immediate subsets, ``C[U - x] <= C[U]``;
* (T) in same-context form, ``b in C[U]`` gives ``C[U + b] <= C[U]``;
* axioms ``A |> a`` for every ``U`` containing ``A``;
* rule instances, once all their premises are in the table.

Meant for carriers of at most 8 or so elements.
"""

from __future__ import annotations

from .system import EntailmentSystem, bits

__all__ = ["dense_closure"]


def dense_closure(sys: EntailmentSystem) -> list[int]:
    n = sys.size
    full = 1 << n
    table = list(range(full))  # (R): every U entails its own members
    changed = True
    while changed:
        changed = False
        for u in range(full):
            c = table[u]
            for x in bits(u):
                c |= table[u & ~(1 << x)]
            for mask, a in sys.axioms:
                if mask & ~u == 0:
                    c |= 1 << a
            grown = True
            while grown:
                grown = False
                for b in bits(c & ~u):
                    extra = table[u | (1 << b)] & ~c
                    if extra:
                        c |= extra
                        grown = True
            if c != table[u]:
                table[u] = c
                changed = True
        for r in sys.rules:
            if all(table[m] >> b & 1 for m, b in r.premises):
                m, b = r.conclusion
                if not table[m] >> b & 1:
                    table[m] |= 1 << b
                    changed = True
    return table
