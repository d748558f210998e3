"""Brute-force reference implementations, written without the package's algorithms.

Each oracle recomputes a quantity from definitions with plain loops so that
tests compare two independent routes.
"""

from __future__ import annotations

from itertools import permutations, product
from math import gcd


def axioms_hold(table) -> bool:
    n = len(table)
    for a in range(n):
        if table[a][a] != a:
            return False
    for b in range(n):
        if sorted(table[a][b] for a in range(n)) != list(range(n)):
            return False
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[table[a][c]][table[b][c]]:
            return False
    return True


def all_quandles(n: int):
    """Every quandle table on 0..n-1 (columns are permutations fixing the diagonal)."""
    cols = []
    for b in range(n):
        cols.append([p for p in permutations(range(n)) if p[b] == b])
    for choice in product(*cols):
        table = [[choice[b][a] for b in range(n)] for a in range(n)]
        if axioms_hold(table):
            yield table


def orbits_connected(table) -> bool:
    n = len(table)
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in range(n):
            for c in (table[a][b], [x for x in range(n) if table[x][b] == a][0]):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
    return len(seen) == n


def _unapply(table, c, d):
    # the unique a with a * c == d
    return next(a for a in range(len(table)) if table[a][c] == d)


def run_braid(table, letters, top):
    """Propagate colors; negative letters invert the positive rule by search."""
    c = list(top)
    trace = []
    for s in letters:
        k = abs(s) - 1
        if s > 0:
            a, b = c[k], c[k + 1]
            trace.append((a, b, 1))
            c[k], c[k + 1] = b, table[a][b]
        else:
            # undo (a, b) -> (b, a*b): here (c_k, c_k+1) = (b, a*b)
            b, ab = c[k], c[k + 1]
            a = _unapply(table, b, ab)
            trace.append((a, b, -1))
            c[k], c[k + 1] = a, b
    return c, trace


def brute_colorings(table, letters, strands):
    n = len(table)
    out = []
    for top in product(range(n), repeat=strands):
        bottom, trace = run_braid(table, letters, top)
        if list(top) == bottom:
            out.append((top, trace))
    return out


def brute_count(table, letters, strands) -> int:
    return len(brute_colorings(table, letters, strands))


def brute_state_sum(table, phi, modulus, letters, strands) -> dict[int, int]:
    """Cyclic A = Z_modulus; phi[a][b] an int. Returns {exponent: count}."""
    out: dict[int, int] = {}
    for _, trace in brute_colorings(table, letters, strands):
        w = sum(sign * phi[a][b] for a, b, sign in trace) % modulus
        out[w] = out.get(w, 0) + 1
    return out


def is_cocycle_brute(table, phi, modulus) -> bool:
    n = len(table)
    if any(phi[a][a] % modulus for a in range(n)):
        return False
    for x, y, z in product(range(n), repeat=3):
        s = phi[x][y] - phi[x][z] + phi[table[x][y]][z] - phi[table[x][z]][table[y][z]]
        if s % modulus:
            return False
    return True


def _rank_mod_p(rows, p):
    rows = [[v % p for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(u - f * v) % p for u, v in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def h2_dimension_mod_p(table, p) -> int:
    """dim H^2_Q(X; Z_p) for prime p by linear algebra over GF(p) on all n^2 variables."""
    n = len(table)
    var = {(a, b): a * n + b for a in range(n) for b in range(n)}
    eqs = []
    for a in range(n):
        r = [0] * (n * n)
        r[var[a, a]] = 1
        eqs.append(r)
    for x, y, z in product(range(n), repeat=3):
        r = [0] * (n * n)
        r[var[x, y]] += 1
        r[var[x, z]] -= 1
        r[var[table[x][y], z]] += 1
        r[var[table[x][z], table[y][z]]] -= 1
        eqs.append(r)
    dim_z = n * n - _rank_mod_p(eqs, p)
    # coboundaries: image of gamma -> gamma(x*y) - gamma(x)
    gens = []
    for g in range(n):
        r = [0] * (n * n)
        for a in range(n):
            for b in range(n):
                r[var[a, b]] = (1 if table[a][b] == g else 0) - (1 if a == g else 0)
        gens.append(r)
    dim_b = _rank_mod_p(gens, p)
    return dim_z - dim_b


def h2_order_brute(table, modulus) -> int:
    """|H^2_Q(X; Z_m)| by listing every cochain. Tiny quandles only."""
    n = len(table)
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    cocycles = 0
    for vals in product(range(modulus), repeat=len(pairs)):
        phi = [[0] * n for _ in range(n)]
        for (a, b), v in zip(pairs, vals):
            phi[a][b] = v
        if is_cocycle_brute(table, phi, modulus):
            cocycles += 1
    boundaries = set()
    for gamma in product(range(modulus), repeat=n):
        boundaries.add(tuple((gamma[table[a][b]] - gamma[a]) % modulus for a, b in pairs))
    return cocycles // len(boundaries)


def brute_isomorphism(t1, t2):
    n = len(t1)
    if len(t2) != n:
        return None
    for f in permutations(range(n)):
        if all(f[t1[a][b]] == t2[f[a]][f[b]] for a in range(n) for b in range(n)):
            return f
    return None


def set_partitions(n):
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [n - 1]] + part[i + 1:]
        yield part + [[n - 1]]


def brute_congruences(table):
    n = len(table)
    out = []
    for part in set_partitions(n):
        lab = [0] * n
        for i, block in enumerate(part):
            for a in block:
                lab[a] = i
        if all(lab[table[a][b]] == lab[table[c][d]]
               for a in range(n) for c in range(n) if lab[a] == lab[c]
               for b in range(n) for d in range(n) if lab[b] == lab[d]):
            out.append(lab)
    return out


def determinantal_divisors(m):
    """Invariant factors from gcds of k x k minors (small matrices only)."""
    from itertools import combinations
    rows, cols = len(m), len(m[0]) if m else 0

    def det(sub):
        k = len(sub)
        if k == 1:
            return sub[0][0]
        return sum((-1) ** j * sub[0][j] * det([r[:j] + r[j + 1:] for r in sub[1:]]) for j in range(k))

    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        d.append(g)
    return [d[i] // d[i - 1] for i in range(1, len(d))]
