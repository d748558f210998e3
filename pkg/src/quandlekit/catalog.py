"""Named quandles used throughout the tests, scripts and acceptance runs."""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .abelian import AbelianGroup
from .quandle import (Quandle, alexander, alexander_module, conjugation_sym, dihedral, product,
                      trivial)

# Z3[t]/(t^2 + 2t + 1) as a 2-dimensional module with t acting by the companion matrix
Q9_MATRIX = [[0, 2], [1, 1]]


def tetrahedral() -> Quandle:
    """The connected quandle of order 4: GF(4) with t the primitive element."""
    q = alexander_module(2, [[0, 1], [1, 1]])
    q.name = "Q4"
    return q


def x6() -> Quandle:
    """4-cycles of S4 under conjugation: connected, not a kei, H_2 = Z4."""
    q = conjugation_sym(4, (4,))
    q.name = "X6"
    return q


def transpositions_s4() -> Quandle:
    q = conjugation_sym(4, (2,))
    q.name = "T6"
    return q


def q9() -> Quandle:
    q = alexander_module(3, Q9_MATRIX)
    q.name = "Q9"
    return q


@lru_cache(maxsize=None)
def x6_family():
    """(X6, Z4, generating cocycle, E24): the chirality-detecting family."""
    from .extension import abelian_extension
    from .homology import generating_cocycle
    x = x6()
    group = AbelianGroup.cyclic(4)
    phi = generating_cocycle(x, 4, 4)
    e = abelian_extension(x, group, phi)
    e.total.name = "E24"
    return x, group, phi, e.total


@lru_cache(maxsize=None)
def q4_family():
    """(Q4, Z2, generating cocycle, E8)."""
    from .extension import abelian_extension
    from .homology import generating_cocycle
    x = tetrahedral()
    group = AbelianGroup.cyclic(2)
    phi = generating_cocycle(x, 2, 2)
    e = abelian_extension(x, group, phi)
    e.total.name = "E8"
    return x, group, phi, e.total


def _named(q: Quandle, name: str) -> Quandle:
    q.name = name
    return q


def catalog(max_size: int = 12) -> dict[str, Quandle]:
    """A deterministic collection of small quandles, keyed by name."""
    out: dict[str, Quandle] = {}

    def add(name, make, size):
        if size <= max_size:
            out[name] = _named(make(), name)

    for n in (1, 2, 3):
        add(f"T{n}", lambda n=n: trivial(n), n)
    for n in range(3, 13):
        add(f"R{n}", lambda n=n: dihedral(n), n)
    for n in range(3, 13):
        for t in range(2, n - 1):
            if gcd(t, n) == 1:
                add(f"A({n},{t})", lambda n=n, t=t: alexander(n, t), n)
    add("Q4", tetrahedral, 4)
    add("X6", x6, 6)
    add("T6", transpositions_s4, 6)
    add("S4_3cyc", lambda: conjugation_sym(4, (3,)), 8)
    add("S4_2x2", lambda: conjugation_sym(4, (2, 2)), 3)
    add("S5_2", lambda: conjugation_sym(5, (2,)), 10)
    add("E8", lambda: q4_family()[3], 8)
    add("Q9", q9, 9)
    add("R3xR3", lambda: product(dihedral(3), dihedral(3)), 9)
    add("R3xT2", lambda: product(dihedral(3), trivial(2)), 6)
    return out
