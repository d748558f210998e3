"""Quandle homology H_2^Q(X; Z) and cohomology H^2_Q(X; A).

Chains are taken modulo the degenerate subcomplex (tuples with equal
adjacent entries), so bases are pairs x != y and triples x != y != z.
Homology comes from the boundary maps; cohomology is solved directly from
the 2-cocycle conditions. The two routes are independent and agree through
the universal coefficient formula, which the test suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .abelian import AbelianGroup
from .errors import ModulusMismatch, NoSuchClass, SizeLimit, CocycleViolation
from .quandle import Quandle, orbits
from .snf import (IntMatrix, diagonal, invariant_factors, lattice_basis, reduce_units,
                  smith_cols, smith_full)

HOMOLOGY_BOUND = 36


@dataclass(frozen=True)
class AbelianGroupStructure:
    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        t = self.torsion
        if any(d <= 1 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"not an invariant-factor chain: {t}")

    @classmethod
    def from_orders(cls, orders, free_rank: int = 0) -> "AbelianGroupStructure":
        """Normalize any list of cyclic orders into invariant factors."""
        orders = [o for o in orders if o != 1]
        if not orders:
            return cls(free_rank, ())
        m = [[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)]
        d, _, _, _, _ = smith_full(m, len(orders))
        return cls(free_rank, tuple(x for x in diagonal(d) if x > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def __str__(self) -> str:
        parts = [f"Z{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Table ``values[x, y]`` of residue tuples in ``group``; shape (n, n, k)."""

    group: AbelianGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if v.ndim == 2:
            v = v[:, :, None]
        mods = np.array(self.group.factors, dtype=np.int64).reshape(1, 1, -1)
        if v.shape[2] != len(self.group.factors):
            raise ModulusMismatch(f"cocycle entries do not match {self.group}")
        v = v % mods if len(self.group.factors) else v
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, n: int, group: AbelianGroup) -> "Cocycle":
        return cls(group, np.zeros((n, n, len(group.factors)), dtype=np.int64))

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def __call__(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values[x, y])

    def rank_table(self) -> np.ndarray:
        """``values`` with each entry replaced by its group rank."""
        out = np.zeros(self.values.shape[:2], dtype=np.int64)
        for d, i in zip(self.group.factors, range(self.values.shape[2])):
            out = out * d + self.values[:, :, i]
        return out

    def __add__(self, other: "Cocycle") -> "Cocycle":
        _same_group(self, other)
        return Cocycle(self.group, self.values + other.values)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        _same_group(self, other)
        return Cocycle(self.group, self.values - other.values)

    def __neg__(self) -> "Cocycle":
        return Cocycle(self.group, -self.values)

    def scale(self, k: int) -> "Cocycle":
        return Cocycle(self.group, k * self.values)

    def map_values(self, f, group: AbelianGroup) -> "Cocycle":
        """Apply the group homomorphism ``f`` entrywise."""
        n = self.size
        out = np.zeros((n, n, len(group.factors)), dtype=np.int64)
        for x in range(n):
            for y in range(n):
                out[x, y] = f(self(x, y))
        return Cocycle(group, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cocycle) and self.group == other.group
                and np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash((self.group, self.values.tobytes()))


def _same_group(a: Cocycle, b: Cocycle) -> None:
    if a.group != b.group or a.size != b.size:
        raise ModulusMismatch(f"cocycles over {a.group} and {b.group} are not comparable")


# --------------------------------------------------------------------- bases


def _check_size(x: Quandle, bound: int) -> None:
    if x.size > bound:
        raise SizeLimit(f"homology limited to n <= {bound}")


def chain_bases(n: int):
    c1 = [(a,) for a in range(n)]
    c2 = [(a, b) for a in range(n) for b in range(n) if a != b]
    c3 = [(a, b, c) for a in range(n) for b in range(n) for c in range(n) if a != b and b != c]
    return c1, c2, c3


def _d3_images(x: Quandle):
    # boundary of each nondegenerate triple, as a sparse vector over pair indices
    n = x.size
    t = x.table
    pair_index = {}
    for a in range(n):
        for b in range(n):
            if a != b:
                pair_index[a, b] = len(pair_index)
    images = []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            ab = int(t[a, b])
            for c in range(n):
                if b == c:
                    continue
                ac, bc = int(t[a, c]), int(t[b, c])
                vec: dict[int, int] = {}
                for (p, q), s in (((a, c), 1), ((ab, c), -1), ((a, b), -1), ((ac, bc), 1)):
                    if p != q:
                        k = pair_index[p, q]
                        vec[k] = vec.get(k, 0) + s
                images.append({k: v for k, v in vec.items() if v})
    return images, pair_index


def boundary_matrices(x: Quandle, bound: int = HOMOLOGY_BOUND) -> tuple[IntMatrix, IntMatrix]:
    """``(d3, d2)`` of the quandle complex; rows index the target basis."""
    _check_size(x, bound)
    n = x.size
    c1, c2, c3 = chain_bases(n)
    images, pair_index = _d3_images(x)
    d3 = IntMatrix(len(c2), len(c3), {}, c2, c3)
    for j, vec in enumerate(images):
        for i, v in vec.items():
            d3.data[i, j] = v
    d2 = IntMatrix(n, len(c2), {}, c1, c2)
    for (a, b), j in pair_index.items():
        ab = x.op(a, b)
        if ab != a:
            d2.data[a, j] = 1
            d2.data[ab, j] = -1
    return d3, d2


def h2_integral(x: Quandle, bound: int = HOMOLOGY_BOUND) -> AbelianGroupStructure:
    """H_2^Q(X; Z) = ker d2 / im d3."""
    _check_size(x, bound)
    n = x.size
    n2 = n * (n - 1)
    images, pair_index = _d3_images(x)
    d3_factors = invariant_factors(images, n2)
    d2_cols = []
    for (a, b), j in pair_index.items():
        ab = x.op(a, b)
        if ab != a:
            d2_cols.append({a: 1, ab: -1})
    rank_d2 = len(lattice_basis(d2_cols, n))
    free = n2 - rank_d2 - len(d3_factors)
    return AbelianGroupStructure(free, tuple(d for d in d3_factors if d > 1))


def cohomology_from_homology(h2: AbelianGroupStructure, n: int) -> AbelianGroupStructure:
    """Hom(H_2, Z_n): each torsion factor d contributes Z_gcd(d, n), each free one Z_n."""
    return AbelianGroupStructure.from_orders([gcd(d, n) for d in h2.torsion] + [n] * h2.free_rank)


# ------------------------------------------------------------------ cocycles


def coboundary(x: Quandle, group: AbelianGroup, gamma) -> Cocycle:
    """delta gamma (x, y) = gamma(x*y) - gamma(x)."""
    g = np.array([group.normalize(v) for v in gamma], dtype=np.int64).reshape(x.size, -1)
    vals = g[x.table] - g[:, None, :]
    return Cocycle(group, vals)


def cocycle_defect(x: Quandle, phi: Cocycle):
    """First (x, y, z) violating the 2-cocycle identity, ('diag', x), or None."""
    if phi.size != x.size:
        raise ModulusMismatch("cocycle and quandle sizes differ")
    n = x.size
    t = x.table
    v = phi.values
    mods = np.array(phi.group.factors, dtype=np.int64)
    for a in range(n):
        if v[a, a].any():
            return ("diag", a)
    if not len(mods):
        return None
    for a in range(n):
        # phi(a,y) - phi(a,z) + phi(a*y,z) - phi(a*z,y*z) over all (y, z)
        s = (v[a][:, None, :] - v[a][None, :, :] + v[t[a]][:, :, :]
             - v[t[a][None, :], t])
        bad = np.argwhere((s % mods).any(axis=2))
        if bad.size:
            y, z = bad[0]
            return (a, int(y), int(z))
    return None


def is_cocycle(x: Quandle, phi: Cocycle) -> bool:
    return cocycle_defect(x, phi) is None


def require_cocycle(x: Quandle, phi: Cocycle) -> None:
    w = cocycle_defect(x, phi)
    if w is not None:
        raise CocycleViolation("not a quandle 2-cocycle", w)


def is_coboundary(x: Quandle, phi: Cocycle):
    """A 1-cochain gamma with phi = delta gamma, or None.

    gamma is unique up to adding a function constant on inner orbits; the
    returned witness vanishes on the least element of each orbit, which makes
    it lexicographically least.
    """
    group = phi.group
    n = x.size
    gamma: list = [None] * n
    t = x.table
    for orb in orbits(x):
        root = orb[0]
        gamma[root] = group.zero
        stack = [root]
        while stack:
            a = stack.pop()
            for b in range(n):
                c = int(t[a, b])
                if gamma[c] is None:
                    gamma[c] = group.add(gamma[a], phi(a, b))
                    stack.append(c)
    if coboundary(x, group, gamma) != phi:
        return None
    return gamma


def cohomologous(x: Quandle, phi1: Cocycle, phi2: Cocycle):
    """gamma with phi2 = phi1 + delta gamma, or None."""
    _same_group(phi1, phi2)
    return is_coboundary(x, phi2 - phi1)


# ---------------------------------------------------------------- cohomology


class _CyclicCohomology:
    """H^2_Q(X; Z_m) for one cyclic modulus, via the cocycle equations."""

    def __init__(self, x: Quandle, m: int):
        self.x = x
        self.m = m
        n = x.size
        images, pair_index = _d3_images(x)
        self.pairs = list(pair_index)
        npairs = len(self.pairs)
        pivots, rest = reduce_units(images, npairs)
        self.pivots = pivots
        free = [c for c in range(npairs) if c not in pivots]
        self.free = free
        fidx = {c: i for i, c in enumerate(free)}
        basis = lattice_basis(({fidx[c]: v for c, v in r.items()} for r in rest), len(free))
        nf = len(free)
        if basis:
            d, v, vinv = smith_cols(basis, nf)
            diag = diagonal(d)
        else:
            v = [[int(i == j) for j in range(nf)] for i in range(nf)]
            vinv = v
            diag = []
        diag = diag + [0] * (nf - len(diag))
        self.v, self.vinv = v, vinv
        # Z^2 is generated by (m / g_i) * V[:, i] with order g_i = gcd(d_i, m)
        self.orders = [gcd(di, m) for di in diag]
        self.n = n

    def _full_vector(self, free_vals: list[int]) -> list[int]:
        # pivot variables are forced by their (unit-pivot) equations
        npairs = len(self.pairs)
        vec = [0] * npairs
        for c, val in zip(self.free, free_vals):
            vec[c] = val % self.m
        for c, row in self.pivots.items():
            u = row[c]
            s = sum(x * vec[j] for j, x in row.items() if j != c)
            vec[c] = (-u * s) % self.m
        return vec

    def z_generator(self, i: int) -> list[int]:
        g = self.orders[i]
        col = [self.v[r][i] * (self.m // g) for r in range(len(self.free))]
        return self._full_vector(col)

    def coordinates(self, vec: list[int]) -> list[int]:
        free_vals = [vec[c] for c in self.free]
        out = []
        for i, g in enumerate(self.orders):
            y = sum(self.vinv[i][r] * free_vals[r] for r in range(len(self.free))) % self.m
            step = self.m // g
            if y % step:
                raise CocycleViolation("vector is not a cocycle")
            out.append((y // step) % g)
        return out

    def to_table(self, vec: list[int]) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for (a, b), v in zip(self.pairs, vec):
            out[a, b] = v
        return out

    def from_table(self, table) -> list[int]:
        return [int(table[a, b]) % self.m for a, b in self.pairs]

    def compute(self):
        live = [i for i, g in enumerate(self.orders) if g > 1]
        k = len(live)
        if k == 0:
            return [], []
        rel = [[self.orders[i] if i == j else 0 for j in live] for i in live]
        t = self.x.table
        for xel in range(self.n):
            delta = [((1 if int(t[a, b]) == xel else 0) - (1 if a == xel else 0)) % self.m
                     for a, b in self.pairs]
            coords = self.coordinates(delta)
            rel.append([coords[i] for i in live])
        # Z^k / rowspan(rel) ~ sum Z/D_jj via c -> c V ; generator j is row j of V^-1
        d, _, _, v, vinv = smith_full(rel, k)
        diag = diagonal(d)
        orders, gens = [], []
        for j in range(k):
            if diag[j] > 1:
                combo = vinv[j]
                vec = [0] * len(self.pairs)
                for coef, i in zip(combo, live):
                    if coef:
                        z = self.z_generator(i)
                        vec = [(a + coef * b) % self.m for a, b in zip(vec, z)]
                orders.append(diag[j])
                gens.append(vec)
        return orders, gens


def h2_cohomology(x: Quandle, group: AbelianGroup | int, bound: int = HOMOLOGY_BOUND):
    """Structure of H^2_Q(X; A) and cocycles representing its invariant-factor generators."""
    _check_size(x, bound)
    if isinstance(group, int):
        group = AbelianGroup.cyclic(group)
    n = x.size
    orders: list[int] = []
    reps: list[np.ndarray] = []
    k = len(group.factors)
    for fi, m in enumerate(group.factors):
        solver = _CyclicCohomology(x, m)
        o, gens = solver.compute()
        for order, vec in zip(o, gens):
            table = np.zeros((n, n, k), dtype=np.int64)
            table[:, :, fi] = solver.to_table(vec)
            orders.append(order)
            reps.append(table)
    structure = AbelianGroupStructure.from_orders(orders)
    if not orders:
        return structure, []
    # recombine per-factor generators into invariant-factor generators
    m = [[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)]
    d, _, uinv, _, _ = smith_full(m, len(orders))
    diag = diagonal(d)
    basis = []
    for j in range(len(orders)):
        if diag[j] > 1:
            total = np.zeros((n, n, k), dtype=np.int64)
            for i in range(len(orders)):
                if uinv[i][j]:
                    total = total + uinv[i][j] * reps[i]
            basis.append(Cocycle(group, total))
    return structure, basis


def cohomology_class_order(x: Quandle, phi: Cocycle) -> int:
    """Order of [phi] in H^2_Q(X; A)."""
    order = 1
    while is_coboundary(x, phi.scale(order)) is None:
        order += 1
    return order


def generating_cocycle(x: Quandle, n: int, target_order: int) -> Cocycle:
    """A Z_n cocycle whose class has order exactly ``target_order``."""
    group = AbelianGroup.cyclic(n)
    structure, basis = h2_cohomology(x, group)
    if target_order == 1:
        return Cocycle.zero(x.size, group)
    if structure.exponent % target_order:
        raise NoSuchClass(f"no class of order {target_order} in H^2 = {structure}")
    return basis[-1].scale(structure.exponent // target_order)


def all_cocycles(x: Quandle, m: int) -> list[Cocycle]:
    """Every Z_m cocycle (the whole group Z^2). Desk scale only."""
    from itertools import product as iproduct
    solver = _CyclicCohomology(x, m)
    group = AbelianGroup.cyclic(m)
    gens = [solver.z_generator(i) for i, g in enumerate(solver.orders) if g > 1]
    ords = [g for g in solver.orders if g > 1]
    total = 1
    for g in ords:
        total *= g
    if total > 10**5:
        raise SizeLimit(f"{total} cocycles is too many to list")
    out = []
    for coefs in iproduct(*(range(g) for g in ords)):
        vec = [0] * len(solver.pairs)
        for c, z in zip(coefs, gens):
            if c:
                vec = [(a + c * b) % m for a, b in zip(vec, z)]
        out.append(Cocycle(group, solver.to_table(vec)))
    return out
