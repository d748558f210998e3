"""Finite abelian groups presented as products of cyclic factors.

Elements are tuples of residues against the fixed factor generators. The
*rank* of an element is its mixed-radix index (first factor most
significant), which matches lexicographic order on the residue tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod

from .errors import InvalidParameter, NotASubgroup, ParseError
from .snf import diagonal, smith_full

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.factors):
            raise InvalidParameter(f"cyclic factors must be positive: {self.factors}")

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls((n,))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse ``Z4``, ``4``, ``2x4`` or ``Z2xZ4``; ``1`` or ``0`` gives the trivial group."""
        t = text.strip().replace(" ", "")
        if t in ("0", "1", "Z1", "trivial"):
            return cls(())
        parts = re.split(r"[x*]", t)
        factors = []
        for p in parts:
            m = re.fullmatch(r"Z?_?(\d+)", p)
            if not m or int(m.group(1)) < 1:
                raise ParseError(f"bad coefficient group {text!r}")
            factors.append(int(m.group(1)))
        return cls(tuple(f for f in factors if f > 1))

    def __str__(self) -> str:
        return "x".join(f"Z{d}" for d in self.factors) or "0"

    def spec(self) -> str:
        return "x".join(str(d) for d in self.factors) or "1"

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        from math import lcm
        return lcm(*self.factors) if self.factors else 1

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a: Element) -> Element:
        return tuple(-x % d for x, d in zip(a, self.factors))

    def scale(self, k: int, a: Element) -> Element:
        return tuple(k * x % d for x, d in zip(a, self.factors))

    def normalize(self, a) -> Element:
        if isinstance(a, int):
            a = (a,)
        if len(a) != len(self.factors):
            raise InvalidParameter(f"element {a} has wrong length for {self}")
        return tuple(x % d for x, d in zip(a, self.factors))

    def element_order(self, a: Element) -> int:
        from math import gcd, lcm
        return lcm(1, *(d // gcd(x, d) for x, d in zip(a, self.factors)))

    def rank(self, a: Element) -> int:
        r = 0
        for x, d in zip(a, self.factors):
            r = r * d + x
        return r

    def unrank(self, r: int) -> Element:
        out = []
        for d in reversed(self.factors):
            out.append(r % d)
            r //= d
        return tuple(reversed(out))

    def elements(self) -> list[Element]:
        return list(product(*(range(d) for d in self.factors)))

    @cached_property
    def add_table(self):
        import numpy as np
        n = self.order
        els = self.elements()
        t = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                t[i, j] = self.rank(self.add(a, b))
        return t

    @cached_property
    def neg_table(self):
        import numpy as np
        return np.array([self.rank(self.neg(a)) for a in self.elements()], dtype=np.int64)

    def automorphisms(self) -> list[dict[Element, Element]]:
        """All automorphisms as element maps, determined by generator images."""
        els = self.elements()
        out = []
        for imgs in product(els, repeat=len(self.factors)):
            # well defined: d_i * image_i must vanish
            if any(self.scale(d, im) != self.zero for im, d in zip(imgs, self.factors)):
                continue
            f = {}
            for a in els:
                v = self.zero
                for coef, im in zip(a, imgs):
                    v = self.add(v, self.scale(coef, im))
                f[a] = v
            if len(set(f.values())) == len(els):
                out.append(f)
        return out

    def quotient(self, gens) -> tuple["AbelianGroup", "Projection"]:
        """Quotient by the subgroup generated by ``gens``."""
        gens = [self.normalize(g) for g in gens]
        k = len(self.factors)
        cols = gens + [tuple(d if i == j else 0 for j in range(k)) for i, d in enumerate(self.factors)]
        m = [[c[i] for c in cols] for i in range(k)]
        if k == 0:
            return AbelianGroup(()), Projection(self, AbelianGroup(()), [], [])
        d, u, _, _, _ = smith_full(m, len(cols))
        diag = diagonal(d)
        keep = [i for i in range(k) if diag[i] != 1]
        quot = AbelianGroup(tuple(diag[i] for i in keep))
        return quot, Projection(self, quot, [u[i] for i in keep], keep)

    def subgroup(self, gens) -> tuple["AbelianGroup", "Embedding"]:
        """Abstract invariant-factor form of the subgroup generated by ``gens``."""
        gens = [self.normalize(g) for g in gens]
        gens = [g for g in gens if g != self.zero]
        k, r = len(self.factors), len(gens)
        if r == 0:
            return AbelianGroup(()), Embedding(self, AbelianGroup(()), [])
        # relation lattice L = {x in Z^r : sum x_j g_j == 0 in A}
        m = [[g[i] for g in gens] + [self.factors[i] if i == j else 0 for j in range(k)]
             for i in range(k)]
        from .snf import kernel_basis
        ker = kernel_basis(m, r + k)
        lmat = [[vec[i] for vec in ker] for i in range(r)]
        d, u, uinv, _, _ = smith_full(lmat, len(ker))
        diag = diagonal(d) + [0] * max(0, r - len(ker))
        images = []
        factors = []
        for i in range(r):
            di = diag[i] if i < len(diag) else 0
            if di == 1:
                continue
            if di == 0:
                raise NotASubgroup("subgroup computation produced an infinite factor")
            coeffs = [uinv[j][i] for j in range(r)]
            el = self.zero
            for c, g in zip(coeffs, gens):
                el = self.add(el, self.scale(c, g))
            images.append(el)
            factors.append(di)
        sub = AbelianGroup(tuple(factors))
        return sub, Embedding(self, sub, images)


@dataclass
class Projection:
    """Surjection A -> A/C given by rows of the Smith row transform."""

    source: AbelianGroup
    target: AbelianGroup
    rows: list[list[int]]
    keep: list[int]

    def __call__(self, a: Element) -> Element:
        return tuple(sum(r * x for r, x in zip(row, a)) % d
                     for row, d in zip(self.rows, self.target.factors))


@dataclass
class Embedding:
    """Injection C -> A sending the i-th generator of C to ``images[i]``."""

    target: AbelianGroup
    source: AbelianGroup
    images: list[Element]

    def __call__(self, c: Element) -> Element:
        out = self.target.zero
        for x, g in zip(c, self.images):
            out = self.target.add(out, self.target.scale(x, g))
        return out

    def inverse_map(self) -> dict[Element, Element]:
        inv = {}
        for c in self.source.elements():
            inv[self(c)] = c
        if len(inv) != self.source.order:
            raise NotASubgroup("embedding is not injective")
        return inv
