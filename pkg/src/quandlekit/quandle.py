"""Finite quandles as operation tables.

``table[a][b] == a * b`` on the universe ``0..n-1``. Row ``a`` is acted on,
column ``b`` acts; the right translation by ``b`` is column ``b``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product as iproduct
from math import gcd

import numpy as np

from .errors import AxiomViolation, InvalidParameter, ShapeError, SizeLimit
from .perm import DEFAULT_GROUP_BOUND, Permutation, PermutationGroup

AUT_BOUND = 64
CONGRUENCE_BOUND = 36


class Quandle:
    """An immutable, verified quandle. Build through :func:`verify_quandle`
    or one of the constructors."""

    __slots__ = ("table", "name", "__dict__")

    def __init__(self, table: np.ndarray, name: str = ""):
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        self.table = t
        self.name = name

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.size

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other) -> bool:
        return isinstance(other, Quandle) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Quandle{label} of order {self.size}>"

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def dual_table(self) -> np.ndarray:
        n = self.size
        d = np.empty_like(self.table)
        cols = np.arange(n)
        for b in range(n):
            d[self.table[:, b], b] = cols
        d.setflags(write=False)
        return d

    def right_translation(self, b: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.table[:, b]))

    @cached_property
    def translation_classes(self) -> list[int]:
        """``cls[a]`` is the least element with the same right translation as ``a``."""
        seen: dict[bytes, int] = {}
        out = []
        for a in range(self.size):
            key = self.table[:, a].tobytes()
            out.append(seen.setdefault(key, a))
        return out


def verify_quandle(table, name: str = "", transposed: bool = False) -> Quandle:
    """Validate an operation table and wrap it as a :class:`Quandle`.

    Raises :class:`ShapeError` for a malformed array and
    :class:`AxiomViolation` listing every failed axiom with its first witness.
    """
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"not an integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ShapeError(f"expected a nonempty square table, got shape {t.shape}")
    if transposed:
        t = t.T.copy()
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise ShapeError(f"entries must lie in 0..{n - 1}")
    violations = []
    diag = t[np.arange(n), np.arange(n)]
    bad = np.flatnonzero(diag != np.arange(n))
    if bad.size:
        a = int(bad[0])
        violations.append((1, (a,)))
    for b in range(n):
        col = t[:, b]
        if np.unique(col).size != n:
            seen: dict[int, int] = {}
            for a in range(n):
                c = int(col[a])
                if c in seen:
                    violations.append((2, (seen[c], a, b)))
                    break
                seen[c] = a
            break
    w = _distributivity_witness(t)
    if w is not None:
        violations.append((3, w))
    if violations:
        raise AxiomViolation(violations)
    return Quandle(t, name)


def _distributivity_witness(t: np.ndarray):
    n = t.shape[0]
    cs = np.arange(n)
    for a in range(n):
        # lhs[b, c] = (a*b)*c, rhs[b, c] = (a*c)*(b*c)
        lhs = t[t[a, :]][:, cs]
        rhs = t[t[a, :][None, :], t]
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            b, c = diff[0]
            return (a, int(b), int(c))
    return None


# ----------------------------------------------------------------- constructors


def trivial(n: int) -> Quandle:
    return verify_quandle(np.tile(np.arange(n)[:, None], (1, n)), f"T{n}")


def dihedral(n: int) -> Quandle:
    """Dihedral quandle R_n: a*b = 2b - a mod n."""
    a = np.arange(n)
    return verify_quandle((2 * a[None, :] - a[:, None]) % n, f"R{n}")


def alexander(n: int, t: int) -> Quandle:
    """Alexander quandle on Z_n with a*b = t*a + (1 - t)*b."""
    if n < 1 or gcd(t, n) != 1:
        raise InvalidParameter(f"t={t} is not a unit mod {n}")
    a = np.arange(n)
    return verify_quandle((t * a[:, None] + (1 - t) * a[None, :]) % n, f"Alex({n},{t})")


def alexander_module(p: int, matrix, name: str = "") -> Quandle:
    """Alexander quandle on (Z_p)^k with t acting by ``matrix`` (column vectors).

    Elements are encoded in base p, first coordinate most significant.
    """
    m = np.array(matrix, dtype=np.int64) % p
    k = m.shape[0]
    vecs = np.array(list(iproduct(range(p), repeat=k)), dtype=np.int64).reshape(-1, k)
    one_minus = (np.eye(k, dtype=np.int64) - m) % p
    tx = vecs @ m.T % p
    if len({tuple(r) for r in tx}) != len(vecs):
        raise InvalidParameter("module endomorphism is not invertible")
    ty = vecs @ one_minus.T % p
    weights = p ** np.arange(k - 1, -1, -1)
    prod_ = (tx[:, None, :] + ty[None, :, :]) % p
    return verify_quandle(prod_ @ weights, name or f"AlexMod({p},{m.tolist()})")


def generalized_alexander(group_table, automorphism) -> Quandle:
    """Quandle on a group G with x*y = f(x y^-1) y.

    ``group_table[g][h]`` is the product gh; ``automorphism[g]`` is f(g).
    """
    g = np.array(group_table, dtype=np.int64)
    f = np.array(automorphism, dtype=np.int64)
    n = g.shape[0]
    ident = _group_identity(g)
    inv = np.empty(n, dtype=np.int64)
    for x in range(n):
        inv[x] = int(np.flatnonzero(g[x] == ident)[0])
    if sorted(f.tolist()) != list(range(n)) or not np.array_equal(f[g], g[f[:, None], f[None, :]]):
        raise InvalidParameter("map is not a group automorphism")
    xs = np.arange(n)
    t = g[f[g[xs[:, None], inv[None, :]]], xs[None, :]]
    return verify_quandle(t, "GenAlex")


def _group_identity(g: np.ndarray) -> int:
    n = g.shape[0]
    for e in range(n):
        if np.array_equal(g[e], np.arange(n)):
            return e
    raise InvalidParameter("table has no identity")


def conjugation(group_table, representative: int, name: str = "") -> Quandle:
    """Conjugation quandle a*b = b^-1 a b on the class of ``representative``."""
    g = np.array(group_table, dtype=np.int64)
    n = g.shape[0]
    ident = _group_identity(g)
    inv = [int(np.flatnonzero(g[x] == ident)[0]) for x in range(n)]
    cls = sorted({int(g[g[inv[h], representative], h]) for h in range(n)})
    index = {c: i for i, c in enumerate(cls)}
    t = [[index[int(g[g[inv[b], a], b])] for b in cls] for a in cls]
    return verify_quandle(t, name or f"Conj({representative})")


def symmetric_group(k: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Elements of S_k (lexicographic) and the table with (gh)(x) = g(h(x))."""
    from itertools import permutations
    els = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(els)}
    t = np.array([[index[tuple(g[h[x]] for x in range(k))] for h in els] for g in els],
                 dtype=np.int64)
    return els, t


def conjugation_sym(k: int, cycle_type: tuple[int, ...]) -> Quandle:
    """Conjugation quandle of the class in S_k with the given cycle type."""
    els, t = symmetric_group(k)
    rep = next(i for i, p in enumerate(els)
               if Permutation(p).cycle_type() == tuple(sorted(cycle_type + (1,) * (k - sum(cycle_type)), reverse=True)))
    return conjugation(t, rep, f"S{k}{list(cycle_type)}")


def product(x: Quandle, y: Quandle) -> Quandle:
    """Direct product; (a, b) is encoded as a * |Y| + b."""
    m = y.size
    t = x.table[:, None, :, None] * m + y.table[None, :, None, :]
    return verify_quandle(t.reshape(x.size * m, x.size * m), f"{x.name}x{y.name}")


def dual(x: Quandle) -> Quandle:
    return verify_quandle(x.dual_table, f"dual({x.name})")


def from_operation(n: int, op, name: str = "") -> Quandle:
    return verify_quandle([[op(a, b) for b in range(n)] for a in range(n)], name)


# ------------------------------------------------------------------- predicates


def inner_group(x: Quandle, bound: int = DEFAULT_GROUP_BOUND) -> PermutationGroup:
    return PermutationGroup(x.size, [x.right_translation(b) for b in range(x.size)], bound)


def orbits(x: Quandle) -> list[list[int]]:
    return PermutationGroup(x.size, [x.right_translation(b) for b in range(x.size)]).orbits()


def is_connected(x: Quandle) -> bool:
    return len(orbits(x)) == 1


def is_faithful(x: Quandle) -> bool:
    return len(set(x.translation_classes)) == x.size


def is_kei(x: Quandle) -> bool:
    t = x.table
    return bool(np.array_equal(t[t, np.arange(x.size)[None, :]], np.tile(np.arange(x.size)[:, None], (1, x.size))))


def is_latin(x: Quandle) -> bool:
    return all(np.unique(row).size == x.size for row in x.table)


def is_homogeneous(x: Quandle, bound: int = AUT_BOUND) -> bool:
    if x.size > bound:
        raise SizeLimit(f"automorphism search limited to n <= {bound}")
    if is_connected(x):
        return True
    return all(_first_isomorphism(x, x, first_image=y) is not None for y in range(1, x.size))


# ----------------------------------------------------- homomorphism backtracking


def _generating_sequence(x: Quandle) -> list[int]:
    """Greedy generators: each is the least element outside the span so far."""
    gens: list[int] = []
    span: set[int] = set()
    for a in range(x.size):
        if a not in span:
            gens.append(a)
            span = _closure(x, span | {a})
    return gens


def _closure(x: Quandle, s: set[int]) -> set[int]:
    t = x.table
    s = set(s)
    frontier = list(s)
    while frontier:
        new = []
        for a in frontier:
            for b in list(s):
                for c in (int(t[a, b]), int(t[b, a])):
                    if c not in s:
                        s.add(c)
                        new.append(c)
        frontier = new
    return s


def _element_profile(x: Quandle) -> list[tuple]:
    # isomorphism-invariant label per element
    inner_orbit_size = {}
    for orb in orbits(x):
        for a in orb:
            inner_orbit_size[a] = len(orb)
    t = x.table
    fixed = [(t[:, a] == np.arange(x.size)).sum() for a in range(x.size)]
    return [(x.right_translation(a).cycle_type(), inner_orbit_size[a], int(fixed[a]))
            for a in range(x.size)]


def _extend(x: Quandle, y: Quandle, f: dict[int, int], inv: dict[int, int], new: int) -> bool:
    # propagate f(a*b) = f(a)*f(b) from the newly assigned element; False on conflict
    tx, ty = x.table, y.table
    queue = [new]
    while queue:
        a = queue.pop()
        for b in list(f):
            for p, q in ((a, b), (b, a)):
                c = int(tx[p, q])
                d = int(ty[f[p], f[q]])
                if c in f:
                    if f[c] != d:
                        return False
                elif d in inv:
                    return False
                else:
                    f[c] = d
                    inv[d] = c
                    queue.append(c)
    return True


def _search(x: Quandle, y: Quandle, first_image: int | None = None, find_all: bool = False,
            limit: int | None = None):
    if x.size != y.size:
        return []
    px, py = _element_profile(x), _element_profile(y)
    if sorted(px) != sorted(py):
        return []
    gens = _generating_sequence(x)
    results = []

    def rec(i: int, f: dict[int, int], inv: dict[int, int]) -> bool:
        if i == len(gens):
            results.append(Permutation(tuple(f[a] for a in range(x.size))))
            if limit is not None and len(results) > limit:
                raise SizeLimit("automorphism group too large to enumerate")
            return not find_all
        g = gens[i]
        candidates = range(y.size) if not (i == 0 and first_image is not None) else [first_image]
        for c in candidates:
            if c in inv or px[g] != py[c]:
                continue
            f2, inv2 = dict(f), dict(inv)
            f2[g] = c
            inv2[c] = g
            if _extend(x, y, f2, inv2, g) and rec(i + 1, f2, inv2):
                return True
        return False

    rec(0, {}, {})
    return results


def _first_isomorphism(x: Quandle, y: Quandle, first_image: int | None = None):
    res = _search(x, y, first_image)
    return res[0] if res else None


def are_isomorphic(x: Quandle, y: Quandle, bound: int = AUT_BOUND) -> Permutation | None:
    """Lexicographically least isomorphism ``x -> y`` (as images of 0..n-1), or None."""
    if max(x.size, y.size) > bound:
        raise SizeLimit(f"isomorphism search limited to n <= {bound}")
    if x.size != y.size:
        return None
    if (is_connected(x), is_kei(x)) != (is_connected(y), is_kei(y)):
        return None
    return _first_isomorphism(x, y)


def automorphisms(x: Quandle, bound: int = AUT_BOUND, max_order: int = 10**6) -> PermutationGroup:
    if x.size > bound:
        raise SizeLimit(f"automorphism search limited to n <= {bound}")
    auts = _search(x, x, find_all=True, limit=max_order)
    return PermutationGroup(x.size, auts)


def is_homomorphism(x: Quandle, y: Quandle, f) -> bool:
    f = np.asarray(f.images if isinstance(f, Permutation) else f, dtype=np.int64)
    return bool(np.array_equal(f[x.table], y.table[f[:, None], f[None, :]]))


# ------------------------------------------------------- quotients and congruences


def quotient_by_labels(x: Quandle, labels) -> tuple[Quandle, list[int]]:
    """Quotient by the partition ``labels`` (any hashable block ids)."""
    blocks: dict = {}
    surj = []
    for a in range(x.size):
        surj.append(blocks.setdefault(labels[a], len(blocks)))
    reps = {}
    for a in range(x.size):
        reps.setdefault(surj[a], a)
    k = len(reps)
    t = [[surj[x.op(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    return verify_quandle(t, f"{x.name}/~"), surj


def faithful_quotient(x: Quandle) -> tuple[Quandle, list[int]]:
    """Image of a -> R_a with R_a * R_b = R_{a*b}, and the index surjection."""
    q, surj = quotient_by_labels(x, x.translation_classes)
    q.name = f"phi({x.name})"
    return q, surj


class Congruence:
    """Partition of 0..n-1 compatible with the quandle operation."""

    def __init__(self, labels):
        canon: dict[int, int] = {}
        self.labels = tuple(canon.setdefault(l, len(canon)) for l in labels)

    @property
    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a, l in enumerate(self.labels):
            out.setdefault(l, []).append(a)
        return list(out.values())

    @property
    def num_blocks(self) -> int:
        return len(set(self.labels))

    def __eq__(self, other) -> bool:
        return isinstance(other, Congruence) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Congruence({self.blocks})"


def _congruence_closure(x: Quandle, labels, pairs) -> Congruence:
    n = x.size
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    t = x.table
    queue = list(pairs)
    if labels is not None:
        first = {}
        for a, l in enumerate(labels):
            if l in first:
                queue.append((first[l], a))
            else:
                first[l] = a
    while queue:
        a, b = queue.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        for c in range(n):
            queue.append((int(t[a, c]), int(t[b, c])))
            queue.append((int(t[c, a]), int(t[c, b])))
    return Congruence([find(a) for a in range(n)])


def is_congruence(x: Quandle, labels) -> bool:
    t = x.table
    lab = np.asarray(labels)
    for a in range(x.size):
        for b in range(a + 1, x.size):
            if lab[a] == lab[b]:
                if not (np.array_equal(lab[t[a]], lab[t[b]]) and np.array_equal(lab[t[:, a]], lab[t[:, b]])):
                    return False
    return True


def congruences(x: Quandle, bound: int = CONGRUENCE_BOUND) -> list[Congruence]:
    """All congruences: principal ones, then closed under joins."""
    if x.size > bound:
        raise SizeLimit(f"congruence enumeration limited to n <= {bound}")
    n = x.size
    discrete = Congruence(range(n))
    principal = {_congruence_closure(x, None, [(a, b)]) for a in range(n) for b in range(a + 1, n)}
    found = {discrete} | principal
    frontier = list(principal)
    while frontier:
        new = []
        for c in frontier:
            for p in principal:
                j = _join(x, c, p)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return sorted(found, key=lambda c: (-c.num_blocks, c.labels))


def _join(x: Quandle, c1: Congruence, c2: Congruence) -> Congruence:
    pairs = []
    for c in (c1, c2):
        for block in c.blocks:
            pairs.extend((block[0], b) for b in block[1:])
    return _congruence_closure(x, None, pairs)


def proper_quotients(x: Quandle, bound: int = CONGRUENCE_BOUND) -> list[Quandle]:
    """Quotients other than x itself and the singleton, up to isomorphism."""
    out: list[Quandle] = []
    for c in congruences(x, bound):
        if c.num_blocks in (1, x.size):
            continue
        q, _ = quotient_by_labels(x, c.labels)
        if not any(q.size == r.size and are_isomorphic(q, r) is not None for r in out):
            out.append(q)
    return out


def is_subquandle_closed(x: Quandle, s) -> bool:
    s = set(s)
    return all(x.op(a, b) in s and int(x.dual_table[a, b]) in s for a in s for b in s)
