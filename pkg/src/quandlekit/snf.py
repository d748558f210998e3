"""Exact integer linear algebra: Smith normal form and lattice reduction.

All arithmetic is on Python ints, so there is no overflow and no tolerance.
Matrices are plain lists of lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

Matrix = list[list[int]]


@dataclass
class IntMatrix:
    """Sparse integer matrix ``{(row, col): value}`` with basis labels."""

    nrows: int
    ncols: int
    data: dict[tuple[int, int], int] = field(default_factory=dict)
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def dense(self) -> Matrix:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for (i, j), v in self.data.items():
            cols[j][i] = v
        return cols

    def rows(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [{} for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            rows[i][j] = v
        return rows

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        orows = other.rows()
        out: dict[tuple[int, int], int] = {}
        for (i, k), v in self.data.items():
            for j, w in orows[k].items():
                out[i, j] = out.get((i, j), 0) + v * w
        return IntMatrix(self.nrows, other.ncols, {k: v for k, v in out.items() if v},
                         self.row_labels, other.col_labels)

    def is_zero(self) -> bool:
        return not any(self.data.values())


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    if ncols is None:
        ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * ncols
        for k, v in enumerate(row):
            if v:
                brow = b[k]
                for j in range(ncols):
                    if brow[j]:
                        acc[j] += v * brow[j]
        out.append(acc)
    return out


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class _SNF:
    # Dense Smith reduction. Transforms are tracked only when requested, since
    # the row transform of a tall matrix is quadratic in its height.

    def __init__(self, m: Matrix, ncols: int, track_rows: bool, track_cols: bool):
        self.a = [row[:] for row in m]
        self.nr = len(m)
        self.nc = ncols
        self.track_rows = track_rows
        self.track_cols = track_cols
        if track_rows:
            self.u, self.uinv = identity(self.nr), identity(self.nr)
        if track_cols:
            self.v, self.vinv = identity(self.nc), identity(self.nc)

    # row_i += q * row_j
    def add_row(self, i: int, j: int, q: int) -> None:
        if q == 0:
            return
        ai, aj = self.a[i], self.a[j]
        for c in range(self.nc):
            if aj[c]:
                ai[c] += q * aj[c]
        if self.track_rows:
            ui, uj = self.u[i], self.u[j]
            for c in range(self.nr):
                if uj[c]:
                    ui[c] += q * uj[c]
            for row in self.uinv:
                if row[i]:
                    row[j] -= q * row[i]

    # col_i += q * col_j
    def add_col(self, i: int, j: int, q: int) -> None:
        if q == 0:
            return
        for row in self.a:
            if row[j]:
                row[i] += q * row[j]
        if self.track_cols:
            for row in self.v:
                if row[j]:
                    row[i] += q * row[j]
            vi, vj = self.vinv[i], self.vinv[j]
            for c in range(self.nc):
                if vi[c]:
                    vj[c] -= q * vi[c]

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        if self.track_rows:
            self.u[i], self.u[j] = self.u[j], self.u[i]
            for row in self.uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.track_cols:
            for row in self.v:
                row[i], row[j] = row[j], row[i]
            self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        if self.track_rows:
            self.u[i] = [-x for x in self.u[i]]
            for row in self.uinv:
                row[i] = -row[i]

    def run(self) -> None:
        a = self.a
        for t in range(min(self.nr, self.nc)):
            best = None
            for i in range(t, self.nr):
                row = a[i]
                for j in range(t, self.nc):
                    if row[j] and (best is None or abs(row[j]) < best[0]):
                        best = (abs(row[j]), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return
            self.swap_rows(t, best[1])
            self.swap_cols(t, best[2])
            while True:
                p = a[t][t]
                moved = False
                for i in range(t + 1, self.nr):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // p))
                        if a[i][t]:
                            self.swap_rows(t, i)
                            moved = True
                            break
                if moved:
                    continue
                for j in range(t + 1, self.nc):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // p))
                        if a[t][j]:
                            self.swap_cols(t, j)
                            moved = True
                            break
                if moved:
                    continue
                bad = next((i for i in range(t + 1, self.nr)
                            if any(a[i][j] % p for j in range(t + 1, self.nc))), None)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)


def smith_normal_form(m: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``D == U @ M @ V``.

    U and V are unimodular; the nonzero diagonal entries of D are positive and
    each divides the next.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    s = _SNF(m, ncols, True, True)
    s.run()
    return s.a, s.u, s.v


def smith_full(m: Matrix, ncols: int | None = None):
    """Like :func:`smith_normal_form` but also returns ``U^-1`` and ``V^-1``."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    s = _SNF(m, ncols, True, True)
    s.run()
    return s.a, s.u, s.uinv, s.v, s.vinv


def smith_cols(m: Matrix, ncols: int) -> tuple[Matrix, Matrix, Matrix]:
    """Smith form tracking only the column transform: ``(D, V, V^-1)``."""
    s = _SNF(m, ncols, False, True)
    s.run()
    return s.a, s.v, s.vinv


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def lattice_basis(rows, ncols: int) -> Matrix:
    """Echelon basis of the Z-lattice spanned by sparse rows.

    ``rows`` yields dicts ``{col: value}``. Two rows sharing a pivot column are
    replaced by a unimodular 2x2 combination, so the lattice never changes.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        v = {c: x for c, x in row.items() if x}
        while v:
            p = min(v)
            r = pivots.get(p)
            if r is None:
                if v[p] < 0:
                    v = {c: -x for c, x in v.items()}
                pivots[p] = v
                break
            rp, vp = r[p], v[p]
            if vp % rp == 0:
                q = vp // rp
                for c, x in r.items():
                    y = v.get(c, 0) - q * x
                    if y:
                        v[c] = y
                    else:
                        v.pop(c, None)
                continue
            g, s, t = _xgcd(rp, vp)
            new_r: dict[int, int] = {}
            new_v: dict[int, int] = {}
            for c in set(r) | set(v):
                x, y = r.get(c, 0), v.get(c, 0)
                a = s * x + t * y
                b = (vp // g) * x - (rp // g) * y
                if a:
                    new_r[c] = a
                if b:
                    new_v[c] = b
            pivots[p] = new_r
            v = new_v
    out = []
    for p in sorted(pivots):
        dense = [0] * ncols
        for c, x in pivots[p].items():
            dense[c] = x
        out.append(dense)
    return out


def reduce_units(rows, ncols: int):
    """Eliminate unit pivots from sparse rows using row operations only.

    Returns ``(pivots, rest)``: ``pivots`` maps a pivot column to a row whose
    entry there is +-1 and which shares no other column with another pivot;
    ``rest`` holds the remaining rows, free of every pivot column. The row
    lattice of ``pivots + rest`` equals that of the input.
    """
    active: dict[int, dict[int, int]] = {}
    where: dict[int, set[int]] = {}
    for idx, row in enumerate(rows):
        r = {c: x for c, x in row.items() if x}
        if r:
            active[idx] = r
            for c in r:
                where.setdefault(c, set()).add(idx)
    pivots: dict[int, dict[int, int]] = {}
    pivot_rows: dict[int, dict[int, int]] = {}
    while True:
        found = None
        for idx, r in active.items():
            for c, x in r.items():
                if x in (1, -1):
                    found = (idx, c)
                    break
            if found:
                break
        if found is None:
            break
        idx, c = found
        r = active.pop(idx)
        for col in r:
            where[col].discard(idx)
        val = r[c]
        targets = list(where.get(c, ()))
        for other in targets:
            s = active[other] if other in active else pivot_rows[other]
            q = s[c] * val
            for col, x in r.items():
                y = s.get(col, 0) - q * x
                if y:
                    if col not in s:
                        where.setdefault(col, set()).add(other)
                    s[col] = y
                else:
                    if col in s:
                        del s[col]
                        where[col].discard(other)
            if other in active and not s:
                del active[other]
        pivots[c] = r
        pivot_rows[idx] = r
        for col in r:
            where.setdefault(col, set()).add(idx)
    del pivot_rows
    return pivots, list(active.values())


def invariant_factors(rows, ncols: int) -> list[int]:
    """Nonzero Smith diagonal of the matrix whose rows are the sparse ``rows``."""
    pivots, rest = reduce_units(rows, ncols)
    ones = [1] * len(pivots)
    if not rest:
        return ones
    cols = sorted({c for r in rest for c in r})
    index = {c: i for i, c in enumerate(cols)}
    basis = lattice_basis(({index[c]: x for c, x in r.items()} for r in rest), len(cols))
    if not basis:
        return ones
    d, _, _ = _run_plain(basis, len(cols))
    return ones + [x for x in diagonal(d) if x]


def _run_plain(m: Matrix, ncols: int):
    s = _SNF(m, ncols, False, False)
    s.run()
    return s.a, None, None


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, s, t) with s*a + t*b == g > 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def kernel_basis(m: Matrix, ncols: int) -> Matrix:
    """Columns (returned as rows) spanning the integer kernel of ``m``."""
    if not m:
        return identity(ncols)
    d, v, _ = smith_cols(m, ncols)
    rank = sum(1 for x in diagonal(d) if x)
    return [[v[i][j] for i in range(ncols)] for j in range(rank, ncols)]


__all__ = [
    "IntMatrix", "smith_normal_form", "smith_full", "smith_cols", "diagonal",
    "lattice_basis", "invariant_factors", "kernel_basis", "determinant",
    "identity", "matmul", "gcd",
]
