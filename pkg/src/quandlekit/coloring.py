"""Quandle colorings of braid closures and 1-tangles.

At a positive letter k the colors (c_k, c_k+1) become (c_k+1, c_k * c_k+1)
with source pair (c_k, c_k+1). A negative letter undoes this: (c_k, c_k+1)
becomes (c_k+1 /* c_k, c_k) where /* is the dual operation, and its source
pair is the output pair, weighted with sign -1. Coloring a closed braid means
choosing top colors that propagate back to themselves.

Enumeration is vectorized over batches of top assignments in lexicographic
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SizeLimit
from .knot import BraidWord, require_knot
from .quandle import Quandle, is_connected, is_homogeneous

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 16


@dataclass(frozen=True)
class Coloring:
    top: tuple[int, ...]
    trace: tuple[tuple[int, int, int], ...]  # (x, y, sign) per crossing


def propagate(x: Quandle, w: BraidWord, top) -> tuple[tuple[int, ...], list[tuple[int, int, int]]]:
    """Bottom colors and the crossing trace for one top assignment."""
    c = [int(v) for v in top]
    if len(c) != w.strands:
        raise ValueError(f"need {w.strands} colors, got {len(c)}")
    t, d = x.table, x.dual_table
    trace = []
    for a in w.letters:
        k = abs(a) - 1
        p, q = c[k], c[k + 1]
        if a > 0:
            trace.append((p, q, 1))
            c[k], c[k + 1] = q, int(t[p, q])
        else:
            r = int(d[q, p])
            trace.append((r, p, -1))
            c[k], c[k + 1] = r, p
    return tuple(c), trace


@lru_cache(maxsize=256)
def homogeneous_for_counting(x: Quandle) -> bool:
    """Whether the fix-one-color shortcut is justified. Never guesses."""
    if is_connected(x):
        return True
    try:
        return is_homogeneous(x)
    except SizeLimit:
        return False


def _check_budget(n_tops: int, w: BraidWord, budget: int) -> None:
    steps = n_tops * max(1, len(w.letters))
    if steps > budget:
        raise SizeLimit(f"{n_tops} top assignments x {len(w.letters)} crossings exceeds budget {budget}")


def _top_batches(n: int, m: int, fixed: dict[int, int]):
    """Arrays of top assignments (rows) in lexicographic order, with some strands fixed."""
    free = [i for i in range(m) if i not in fixed]
    total = n ** len(free)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        tops = np.empty((len(idx), m), dtype=np.int64)
        for i, v in fixed.items():
            tops[:, i] = v
        rem = idx
        for i in reversed(free):
            tops[:, i] = rem % n
            rem = rem // n
        yield tops


def _sweep(x: Quandle, w: BraidWord, tops: np.ndarray, weights=None):
    """Propagate a batch; optionally accumulate cocycle weights as group ranks.

    ``weights`` is (rank_table, add_table, neg_table) or None.
    """
    c = tops.copy()
    t, d = x.table, x.dual_table
    acc = np.zeros(len(c), dtype=np.int64) if weights is not None else None
    for a in w.letters:
        k = abs(a) - 1
        p, q = c[:, k].copy(), c[:, k + 1].copy()
        if a > 0:
            if acc is not None:
                phi, add, _ = weights
                acc = add[acc, phi[p, q]]
            c[:, k] = q
            c[:, k + 1] = t[p, q]
        else:
            r = d[q, p]
            if acc is not None:
                phi, add, neg = weights
                acc = add[acc, neg[phi[r, p]]]
            c[:, k] = r
            c[:, k + 1] = p
    return c, acc


def closed_weights(x: Quandle, w: BraidWord, weights=None, fixed: dict[int, int] | None = None,
                   budget: int = DEFAULT_BUDGET):
    """Yield (tops, weight ranks or None) for closure colorings, batch by batch."""
    fixed = fixed or {}
    _check_budget(x.size ** (w.strands - len(fixed)), w, budget)
    for tops in _top_batches(x.size, w.strands, fixed):
        bottom, acc = _sweep(x, w, tops, weights)
        closed = (bottom == tops).all(axis=1)
        yield tops[closed], (acc[closed] if acc is not None else None)


def _count(x: Quandle, w: BraidWord, fixed: dict[int, int], budget: int) -> int:
    return sum(len(tops) for tops, _ in closed_weights(x, w, None, fixed, budget))


def count_colorings(x: Quandle, w: BraidWord, budget: int = DEFAULT_BUDGET) -> int:
    require_knot(w)
    if homogeneous_for_counting(x):
        return x.size * _count(x, w, {0: 0}, budget)
    return _count(x, w, {}, budget)


def count_colorings_fixed(x: Quandle, color: int, w: BraidWord, budget: int = DEFAULT_BUDGET) -> int:
    """Colorings whose strand-1 top arc (the base point arc) has the given color."""
    require_knot(w)
    return _count(x, w, {0: int(color)}, budget)


def is_end_monochromatic(x: Quandle, w: BraidWord, budget: int = DEFAULT_BUDGET) -> bool:
    """Every coloring of the tangle cut at strand 1 has equal end colors."""
    require_knot(w)
    _check_budget(x.size ** w.strands, w, budget)
    for tops in _top_batches(x.size, w.strands, {}):
        bottom, _ = _sweep(x, w, tops)
        tangle = (bottom[:, 1:] == tops[:, 1:]).all(axis=1)
        if (bottom[tangle, 0] != tops[tangle, 0]).any():
            return False
    return True


def enumerate_colorings(x: Quandle, w: BraidWord, budget: int = DEFAULT_BUDGET) -> list[Coloring]:
    require_knot(w)
    out = []
    for tops, _ in closed_weights(x, w, None, {}, budget):
        for top in tops:
            top = tuple(int(v) for v in top)
            _, trace = propagate(x, w, top)
            out.append(Coloring(top, tuple(trace)))
    return out
