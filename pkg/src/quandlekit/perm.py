"""Concrete permutations and fully enumerated permutation groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .errors import InvalidParameter, SizeLimit

DEFAULT_GROUP_BOUND = 10**7


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InvalidParameter(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) == self(other(x))
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


class PermutationGroup:
    """Group generated by ``generators``, enumerated by closure on demand."""

    def __init__(self, degree: int, generators, bound: int = DEFAULT_GROUP_BOUND):
        self.degree = degree
        self.generators = tuple(g if isinstance(g, Permutation) else Permutation(tuple(g))
                                for g in generators)
        self.bound = bound

    @cached_property
    def _elements(self) -> frozenset[tuple[int, ...]]:
        ident = tuple(range(self.degree))
        gens = list({g.images for g in self.generators if not g.is_identity()})
        seen = {ident}
        queue = deque([ident])
        while queue:
            h = queue.popleft()
            for g in gens:
                prod_ = tuple(g[i] for i in h)
                if prod_ not in seen:
                    seen.add(prod_)
                    if len(seen) > self.bound:
                        raise SizeLimit(f"group order exceeds bound {self.bound}")
                    queue.append(prod_)
        return frozenset(seen)

    def elements(self) -> list[Permutation]:
        return [Permutation(e) for e in sorted(self._elements)]

    @property
    def order(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p) -> bool:
        images = p.images if isinstance(p, Permutation) else tuple(p)
        return images in self._elements

    def orbits(self) -> list[list[int]]:
        # generators suffice for orbits; no enumeration needed
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g.images):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return sorted(groups.values())

    def is_transitive(self) -> bool:
        return len(self.orbits()) <= 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def is_cyclic(self) -> bool:
        n = self.order
        return any(p.order() == n for p in self.elements())
