"""Abelian and constant-cocycle extensions of quandles.

An abelian extension E(X, A, phi) lives on X x A with
(x, a) * (y, b) = (x*y, a + phi(x, y)); element (x, a) gets index
x * |A| + rank(a). A constant-cocycle extension on X x S uses a table of
permutations beta[x, y] of S instead: (x, t) * (y, s) = (x*y, beta[x, y](t)),
indexed x * |S| + t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian import AbelianGroup, Element
from .errors import (BaseMismatch, BaseNotKei, ConstantCocycleViolation, FibersUnequal, IsFaithful,
                     NotASubgroup, NotConnected)
from .homology import Cocycle, require_cocycle
from .perm import Permutation, PermutationGroup
from .quandle import (Quandle, faithful_quotient, is_connected, is_faithful, is_homomorphism,
                      is_kei, verify_quandle)


@dataclass(frozen=True, eq=False)
class AbelianExtension:
    base: Quandle
    group: AbelianGroup
    cocycle: Cocycle
    total: Quandle

    @property
    def projection(self) -> list[int]:
        k = self.group.order
        return [i // k for i in range(self.total.size)]

    def index(self, x: int, a) -> int:
        return x * self.group.order + self.group.rank(self.group.normalize(a))

    def split(self, i: int) -> tuple[int, Element]:
        k = self.group.order
        return i // k, self.group.unrank(i % k)


def abelian_extension(x: Quandle, group: AbelianGroup, phi: Cocycle) -> AbelianExtension:
    if phi.group != group or phi.size != x.size:
        raise BaseMismatch("cocycle does not match the base quandle and group")
    require_cocycle(x, phi)
    n, k = x.size, group.order
    add = group.add_table
    rank = phi.rank_table()
    r = np.arange(k)
    # total[(x, a), (y, b)] = (x*y) * k + (a + phi(x, y))
    t = x.table[:, None, :, None] * k + add[r[None, :, None, None], rank[:, None, :, None]]
    t = np.broadcast_to(t, (n, k, n, k)).reshape(n * k, n * k)
    total = verify_quandle(t, f"E({x.name},{group})")
    return AbelianExtension(x, group, phi, total)


# ------------------------------------------------------------ constant cocycles


@dataclass(frozen=True, eq=False)
class ConstantCocycle:
    """``beta[x, y]`` is a permutation of 0..k-1 stored as an image array."""

    base: Quandle
    fiber_size: int
    beta: np.ndarray

    def __post_init__(self):
        b = np.array(self.beta, dtype=np.int64)
        b.setflags(write=False)
        object.__setattr__(self, "beta", b)

    def __call__(self, x: int, y: int) -> Permutation:
        return Permutation(tuple(int(v) for v in self.beta[x, y]))

    def defect(self):
        """None if valid, else a witness: ('diag', x), ('perm', x, y) or (x, y, z)."""
        n, k = self.base.size, self.fiber_size
        b = self.beta
        if b.shape != (n, n, k):
            return ("shape", b.shape)
        ident = np.arange(k)
        for a in range(n):
            for c in range(n):
                if sorted(b[a, c].tolist()) != list(range(k)):
                    return ("perm", a, c)
            if not np.array_equal(b[a, a], ident):
                return ("diag", a)
        t = self.base.table
        for x in range(n):
            for y in range(n):
                xy = t[x, y]
                for z in range(n):
                    lhs = b[xy, z][b[x, y]]
                    rhs = b[t[x, z], t[y, z]][b[x, z]]
                    if not np.array_equal(lhs, rhs):
                        return (x, y, int(z))
        return None

    def validate(self) -> "ConstantCocycle":
        w = self.defect()
        if w is not None:
            raise ConstantCocycleViolation("not a constant quandle cocycle", w)
        return self

    def group(self) -> PermutationGroup:
        """H_beta, the group generated by all beta values."""
        n = self.base.size
        gens = {tuple(int(v) for v in self.beta[x, y]) for x in range(n) for y in range(n)}
        return PermutationGroup(self.fiber_size, sorted(gens))


def constant_cocycle_from(x: Quandle, phi: Cocycle) -> ConstantCocycle:
    """beta[x, y](t) = t + phi(x, y) on the elements of A (by rank)."""
    add = phi.group.add_table
    rank = phi.rank_table()
    beta = add[np.arange(phi.group.order)[None, None, :], rank[:, :, None]]
    return ConstantCocycle(x, phi.group.order, beta)


def constant_extension(x: Quandle, beta: ConstantCocycle) -> Quandle:
    if beta.base != x:
        raise BaseMismatch("constant cocycle belongs to another base")
    beta.validate()
    n, k = x.size, beta.fiber_size
    t = x.table[:, None, :, None] * k + beta.beta[:, :, None, :].transpose(0, 3, 1, 2)
    t = np.broadcast_to(t, (n, k, n, k)).reshape(n * k, n * k)
    return verify_quandle(t, f"{x.name} x_beta {k}")


# ----------------------------------------------------------------------- kei


def kei_extension_check(x: Quandle, phi: Cocycle) -> bool:
    """For a kei base: the extension is a kei iff phi(x,y) + phi(x*y,y) = 0."""
    if not is_kei(x):
        raise BaseNotKei(f"{x.name or 'base'} is not a kei")
    v = phi.values
    s = v + v[x.table, np.arange(x.size)[None, :]]
    mods = np.array(phi.group.factors, dtype=np.int64)
    return not (s % mods).any() if len(mods) else True


# --------------------------------------------------------- pairing and towers


def pair_cocycles(phi_b: Cocycle, phi_c: Cocycle) -> Cocycle:
    """(phi_B, phi_C) as one cocycle over B x C."""
    if phi_b.size != phi_c.size:
        raise BaseMismatch("cocycles live on different bases")
    group = AbelianGroup(phi_b.group.factors + phi_c.group.factors)
    return Cocycle(group, np.concatenate([phi_b.values, phi_c.values], axis=2))


def lift_cocycle(e: AbelianExtension, phi_c: Cocycle) -> Cocycle:
    """phi'((x1, b1), (x2, b2)) = phi_C(x1, x2) on the total space of e."""
    if phi_c.size != e.base.size:
        raise BaseMismatch("cocycle does not live on the extension's base")
    p = np.array(e.projection)
    return Cocycle(phi_c.group, phi_c.values[p[:, None], p[None, :]])


@dataclass(frozen=True, eq=False)
class IteratedExtension:
    inner: AbelianExtension  # E(X, B, phi_B)
    outer: AbelianExtension  # E(E(X, B), C, phi'_C)
    paired: AbelianExtension  # E(X, B x C, (phi_B, phi_C))
    witness: Permutation  # paired.total -> outer.total


def iterate_extension(x: Quandle, phi_b: Cocycle, phi_c: Cocycle) -> IteratedExtension:
    if phi_b.size != x.size or phi_c.size != x.size:
        raise BaseMismatch("cocycles and base differ in size")
    inner = abelian_extension(x, phi_b.group, phi_b)
    outer = abelian_extension(inner.total, phi_c.group, lift_cocycle(inner, phi_c))
    pair = pair_cocycles(phi_b, phi_c)
    paired = abelian_extension(x, pair.group, pair)
    kb, kc = phi_b.group.order, phi_c.group.order
    images = []
    for i in range(paired.total.size):
        xel, bc = paired.split(i)
        b, c = bc[:len(phi_b.group.factors)], bc[len(phi_b.group.factors):]
        images.append((xel * kb + phi_b.group.rank(b)) * kc + phi_c.group.rank(c))
    witness = Permutation(tuple(images))
    if not is_homomorphism(paired.total, outer.total, witness):
        raise AssertionError("pairing map failed to be a homomorphism")
    return IteratedExtension(inner, outer, paired, witness)


@dataclass(frozen=True, eq=False)
class Tower:
    middle: AbelianExtension  # E(X, A/C, p_B phi)
    top: AbelianExtension  # E(middle, C, phi')
    witness: Permutation  # top.total -> E(X, A, phi).total
    section: dict  # coset representative s(b) for each b in A/C


def _check_subgroup_gens(group: AbelianGroup, gens) -> list[Element]:
    out = []
    for g in gens:
        g = (g,) if isinstance(g, int) else tuple(g)
        if len(g) != len(group.factors):
            raise NotASubgroup(f"{g} is not an element of {group}")
        out.append(group.normalize(g))
    return out


def tower_decompose(x: Quandle, group: AbelianGroup, phi: Cocycle, subgroup_gens) -> Tower:
    """Split E(X, A, phi) as an extension of E(X, A/C) by C."""
    gens = _check_subgroup_gens(group, subgroup_gens)
    b_group, p_b = group.quotient(gens)
    c_group, iota = group.subgroup(gens)
    iota_inv = iota.inverse_map()
    section: dict[Element, Element] = {}
    for a in group.elements():  # lexicographic, so the first hit is the least
        section.setdefault(p_b(a), a)

    def eta(b1, b2):
        d = group.sub(group.sub(section[b_group.add(b1, b2)], section[b1]), section[b2])
        return iota_inv[d]

    n = x.size
    phi_b_vals = np.zeros((n, n, len(b_group.factors)), dtype=np.int64)
    p_c = {}
    for a in range(n):
        for c in range(n):
            v = phi(a, c)
            pb = p_b(v)
            phi_b_vals[a, c] = pb
            p_c[a, c] = iota_inv[group.sub(v, section[pb])]
    phi_b = Cocycle(b_group, phi_b_vals)
    middle = abelian_extension(x, b_group, phi_b)

    m = middle.total.size
    top_vals = np.zeros((m, m, len(c_group.factors)), dtype=np.int64)
    for i in range(m):
        x1, b1 = middle.split(i)
        for j in range(m):
            x2, _ = middle.split(j)
            pb = tuple(int(v) for v in phi_b_vals[x1, x2])
            top_vals[i, j] = c_group.sub(p_c[x1, x2], eta(b1, pb))
    top = abelian_extension(middle.total, c_group, Cocycle(c_group, top_vals))

    full = abelian_extension(x, group, phi)
    images = []
    for i in range(top.total.size):
        mid, c = top.split(i)
        x1, b = middle.split(mid)
        images.append(full.index(x1, group.add(section[b], iota(c))))
    witness = Permutation(tuple(images))
    if not is_homomorphism(top.total, full.total, witness):
        raise AssertionError("tower map failed to be a homomorphism")
    return Tower(middle, top, witness, section)


# ------------------------------------------------------------------ detection


@dataclass(frozen=True, eq=False)
class Detection:
    base: Quandle
    surjection: list[int]
    labels: list[tuple[int, int]]  # Y element -> (base element, fiber label)
    constant: ConstantCocycle
    group: AbelianGroup | None = None
    cocycle: Cocycle | None = None
    witness: Permutation | None = None  # Y -> abelian_extension(base, group, cocycle).total

    @property
    def fiber_size(self) -> int:
        return self.constant.fiber_size

    @property
    def is_abelian(self) -> bool:
        return self.cocycle is not None


def _label_fibers(y: Quandle, surj: list[int], n: int, k: int) -> list[tuple[int, int]]:
    fibers: list[list[int]] = [[] for _ in range(n)]
    for a, xa in enumerate(surj):
        fibers[xa].append(a)
    if len({len(f) for f in fibers}) != 1:
        raise FibersUnequal(f"fiber sizes {[len(f) for f in fibers]}")
    labels: list = [None] * y.size
    done = [False] * n
    for t, a in enumerate(fibers[0]):
        labels[a] = (0, t)
    done[0] = True
    queue = [0]
    t_tab = y.table
    while queue:
        xa = queue.pop(0)
        for z in range(n):
            r = fibers[z][0]
            target = surj[t_tab[fibers[xa][0], r]]
            if done[target]:
                continue
            for a in fibers[xa]:
                labels[int(t_tab[a, r])] = (target, labels[a][1])
            done[target] = True
            queue.append(target)
    return labels


def detect_abelian_extension(y: Quandle) -> Detection:
    """Recognize a connected non-faithful quandle as an extension of its inner image."""
    if not is_connected(y):
        raise NotConnected(f"{y.name or 'quandle'} is not connected")
    if is_faithful(y):
        raise IsFaithful(f"{y.name or 'quandle'} is faithful: nothing to detect")
    x, surj = faithful_quotient(y)
    n = x.size
    if y.size % n:
        raise FibersUnequal(f"{y.size} elements over a base of {n}")
    k = y.size // n
    labels = _label_fibers(y, surj, n, k)
    where = {lab: a for a, lab in enumerate(labels)}
    beta = np.zeros((n, n, k), dtype=np.int64)
    for xa in range(n):
        for z in range(n):
            r = where[z, 0]
            for t in range(k):
                beta[xa, z, t] = labels[y.op(where[xa, t], r)][1]
    constant = ConstantCocycle(x, k, beta).validate()
    h = constant.group()
    if not (h.is_transitive() and h.is_cyclic()):
        return Detection(x, surj, labels, constant)
    # a transitive cyclic group is regular; label the fiber by powers of a generator
    sigma = min((g for g in h.elements() if g.order() == k), key=lambda g: g.images)
    relabel = [0] * k
    pos = 0
    for i in range(k):
        relabel[pos] = i
        pos = sigma(pos)
    group = AbelianGroup.cyclic(k)
    vals = np.zeros((n, n, 1), dtype=np.int64)
    for xa in range(n):
        for z in range(n):
            vals[xa, z, 0] = relabel[int(beta[xa, z, 0])]
    phi = Cocycle(group, vals)
    ext = abelian_extension(x, group, phi)
    witness = Permutation(tuple(ext.index(xa, relabel[t]) for xa, t in labels))
    if not is_homomorphism(y, ext.total, witness):
        raise AssertionError("detected labeling is not an isomorphism")
    return Detection(x, surj, labels, constant, group, phi, witness)


def find_constant_cocycles(x: Quandle, k: int, accept=None, limit: int = 1):
    """Backtracking search for constant cocycles on a fiber of size k.

    Assignments are tried in lexicographic order of (pair, permutation) and
    every cocycle identity is checked as soon as its four entries are set.
    Returns up to ``limit`` cocycles passing ``accept``.
    """
    from itertools import permutations
    n = x.size
    t = x.table
    perms = [np.array(p, dtype=np.int64) for p in permutations(range(k))]
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    order = {p: i for i, p in enumerate(pairs)}
    beta = np.zeros((n, n, k), dtype=np.int64)
    beta[:] = np.arange(k)
    # each identity waits on its last-assigned pair
    checks: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(pairs))}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                deps = [(int(t[a, b]), c), (a, b), (int(t[a, c]), int(t[b, c])), (a, c)]
                idx = [order[d] for d in deps if d[0] != d[1]]
                if idx:
                    checks[max(idx)].append((a, b, c))
    found = []

    def ok(i):
        for a, b, c in checks[i]:
            lhs = beta[t[a, b], c][beta[a, b]]
            rhs = beta[t[a, c], t[b, c]][beta[a, c]]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def rec(i):
        if len(found) >= limit:
            return
        if i == len(pairs):
            cc = ConstantCocycle(x, k, beta.copy())
            if accept is None or accept(cc):
                found.append(cc)
            return
        a, b = pairs[i]
        for p in perms:
            beta[a, b] = p
            if ok(i):
                rec(i + 1)
        beta[a, b] = np.arange(k)

    rec(0)
    return found
