"""Braid words and their closures.

A letter ``k > 0`` is sigma_k and ``-k`` its inverse; strands are numbered
from 1. Closures are read top to bottom with strands oriented downward.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .errors import LetterOutOfRange, NotAKnot, NotCoprime, ParseError, ZeroLetter
from .perm import Permutation


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        if self.strands < 1:
            raise ParseError(f"braid needs at least one strand, got {self.strands}")
        for a in self.letters:
            if a == 0:
                raise ZeroLetter("braid letters must be nonzero")
            if abs(a) > self.strands - 1:
                raise LetterOutOfRange(f"letter {a} needs more than {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.letters) + "]"

    def describe(self) -> str:
        return f"{self.strands} {self}"

    def stabilize(self) -> "BraidWord":
        """Markov stabilization: append sigma_m on one extra strand."""
        return BraidWord(self.strands + 1, self.letters + (self.strands,))

    def rotate(self, k: int = 1) -> "BraidWord":
        """Cyclic permutation of the letters (conjugation, same closure)."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])


@dataclass(frozen=True)
class KnotEntry:
    name: str
    braid: BraidWord
    note: str = ""


@dataclass(frozen=True)
class Tangle:
    """A braid whose closure is cut open along strand 1's closing arc."""

    braid: BraidWord
    cut: int = field(default=1)


_BRACKETS = re.compile(r"^\s*\[(.*)\]\s*$")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    m = _BRACKETS.match(text)
    if not m:
        raise ParseError(f"expected a bracketed letter list, got {text!r}")
    body = m.group(1).strip()
    letters = []
    if body:
        for tok in body.split(","):
            tok = tok.strip()
            try:
                letters.append(int(tok))
            except ValueError:
                raise ParseError(f"bad braid letter {tok!r}") from None
    if strands is None:
        strands = 1 + max((abs(a) for a in letters), default=0)
    return BraidWord(strands, tuple(letters))


def closure_permutation(w: BraidWord) -> Permutation:
    """Where each top position ends up at the bottom, ignoring crossing signs."""
    pos = list(range(w.strands))  # pos[i] = strand sitting at position i
    for a in w.letters:
        k = abs(a) - 1
        pos[k], pos[k + 1] = pos[k + 1], pos[k]
    images = [0] * w.strands
    for i, s in enumerate(pos):
        images[s] = i
    return Permutation(tuple(images))


def is_knot(w: BraidWord) -> bool:
    return len(closure_permutation(w).cycles()) == 1


def require_knot(w: BraidWord, name: str = "") -> None:
    if not is_knot(w):
        raise NotAKnot(name or f"closure of {w} has more than one component")


def unknot() -> BraidWord:
    return BraidWord(1, ())


def connect_sum(w1: BraidWord, w2: BraidWord) -> BraidWord:
    require_knot(w1)
    require_knot(w2)
    shift = w1.strands - 1
    extra = tuple(b + shift if b > 0 else b - shift for b in w2.letters)
    return BraidWord(w1.strands + w2.strands - 1, w1.letters + extra)


def mirror(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-a for a in w.letters))


def reverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(reversed(w.letters)))


def reverse_mirror(w: BraidWord) -> BraidWord:
    return reverse(mirror(w))


def torus_braid(p: int, q: int) -> BraidWord:
    if p < 1 or gcd(p, q) != 1:
        raise NotCoprime(f"torus braid needs coprime (p, q), got ({p}, {q})")
    w = BraidWord(p, tuple(range(1, p)) * abs(q))
    return w if q > 0 else mirror(w)


# ------------------------------------------------------------------ catalogs

_ENTRY = re.compile(r"^(\S+)\s+(\d+)\s+(\[.*\])\s*$")


def parse_catalog(text: str, source: str = "<catalog>") -> list[KnotEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, comment = raw.partition("#")
        line = line.strip()
        if not line:
            continue
        m = _ENTRY.match(line)
        if not m:
            raise ParseError(f"{source}:{lineno}: expected 'name strands [letters]'")
        name, strands, letters = m.group(1), int(m.group(2)), m.group(3)
        w = parse_braid(letters, strands)
        require_knot(w, name)
        entries.append(KnotEntry(name, w, comment.strip()))
    return entries


def load_catalog(path) -> list[KnotEntry]:
    path = Path(path)
    return parse_catalog(path.read_text(), str(path))


def format_catalog(entries) -> str:
    lines = []
    for e in entries:
        line = f"{e.name} {e.braid.describe()}"
        if e.note:
            line += f"  # {e.note}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def seed_catalog() -> list[KnotEntry]:
    """Torus knots with small braid words plus the figure-eight knot."""
    entries = [KnotEntry("0_1", unknot(), "unknot")]
    for name, (p, q) in [("3_1", (2, 3)), ("5_1", (2, 5)), ("7_1", (2, 7)), ("9_1", (2, 9)),
                         ("8_19", (3, 4)), ("10_124", (3, 5))]:
        entries.append(KnotEntry(name, torus_braid(p, q), f"torus knot T({p},{q})"))
    entries.append(KnotEntry("4_1", BraidWord(3, (1, -2, 1, -2)), "figure-eight"))
    return entries
