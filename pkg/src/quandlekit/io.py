"""Readers and writers for the on-disk formats.

Quandle files (``.qnd``): first line ``n``, then n rows of n 1-based entries.
Cocycle files (``.coc``): header ``n A=d1xd2``, then n rows of n
comma-separated residue tuples. ``#`` starts a comment in both.
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .abelian import AbelianGroup
from .errors import CocycleViolation, ParseError, ShapeError
from .homology import Cocycle
from .invariant import GroupRingElement, RecoveryAnchor
from .knot import parse_braid
from .quandle import Quandle, verify_quandle


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def transposed_from_env() -> bool:
    return os.environ.get("RIG_TRANSPOSED", "") not in ("", "0")


def parse_quandle(text: str, name: str = "", transposed: bool | None = None) -> Quandle:
    if transposed is None:
        transposed = transposed_from_env()
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty quandle file")
    try:
        n = int(lines[0])
        rows = [[int(v) - 1 for v in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer entry: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ShapeError(f"expected {n} rows of {n} entries")
    return verify_quandle(rows, name, transposed=transposed)


def read_quandle(path, transposed: bool | None = None) -> Quandle:
    path = Path(path)
    return parse_quandle(path.read_text(), path.stem, transposed)


def format_quandle(x: Quandle) -> str:
    lines = [str(x.size)]
    lines += [" ".join(str(int(v) + 1) for v in row) for row in x.table]
    return "\n".join(lines) + "\n"


def write_quandle(x: Quandle, path) -> None:
    Path(path).write_text(format_quandle(x))


def parse_cocycle(text: str) -> Cocycle:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty cocycle file")
    head = lines[0].split()
    if len(head) != 2 or not head[1].startswith("A="):
        raise ParseError("cocycle header must read 'n A=d1xd2...'")
    try:
        n = int(head[0])
    except ValueError:
        raise ParseError(f"bad size {head[0]!r}") from None
    group = AbelianGroup.parse(head[1][2:])
    k = len(group.factors)
    rows = lines[1:]
    if len(rows) != n:
        raise ShapeError(f"expected {n} cocycle rows, got {len(rows)}")
    vals = np.zeros((n, n, k), dtype=np.int64)
    for i, line in enumerate(rows):
        entries = line.split()
        if len(entries) != n:
            raise ShapeError(f"row {i + 1} has {len(entries)} entries, expected {n}")
        for j, e in enumerate(entries):
            try:
                tup = [int(v) for v in e.split(",")] if k else []
            except ValueError:
                raise ParseError(f"bad entry {e!r}") from None
            if k and len(tup) != k:
                raise ParseError(f"entry {e!r} does not match A={group.spec()}")
            vals[i, j] = tup
    phi = Cocycle(group, vals)
    for a in range(n):
        if phi.values[a, a].any():
            raise CocycleViolation("diagonal entries must be zero", ("diag", a))
    return phi


def read_cocycle(path) -> Cocycle:
    return parse_cocycle(Path(path).read_text())


def format_cocycle(phi: Cocycle) -> str:
    n = phi.size
    lines = [f"{n} A={phi.group.spec()}"]
    for a in range(n):
        lines.append(" ".join(",".join(str(int(v)) for v in phi.values[a, b]) or "0"
                              for b in range(n)))
    return "\n".join(lines) + "\n"


def write_cocycle(phi: Cocycle, path) -> None:
    Path(path).write_text(format_cocycle(phi))


# -------------------------------------------------------------- anchors, jobs


def parse_anchors(text: str) -> list[RecoveryAnchor]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"anchors: {exc}") from None
    if isinstance(data, dict):
        data = [data]
    out = []
    for item in data:
        try:
            v = item["v"]
            v = tuple(v) if isinstance(v, list) else (int(v),)
            out.append(RecoveryAnchor(v, parse_braid(item["braid"]), int(item["r_e"]), int(item["r_v"])))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"anchor entry {item!r}: {exc}") from None
    return out


def format_anchors(anchors) -> str:
    return json.dumps([{"v": list(a.v), "braid": str(a.braid), "r_e": a.r_e, "r_v": a.r_v}
                       for a in anchors], indent=2) + "\n"


@dataclass(frozen=True)
class ExtensionDescriptor:
    base: str
    group: str
    cocycle: str

    def resolve(self, root) -> tuple[Quandle, AbelianGroup, Cocycle]:
        root = Path(root)
        x = read_quandle(root / self.base)
        phi = read_cocycle(root / self.cocycle)
        group = AbelianGroup.parse(self.group)
        if phi.group != group:
            raise ParseError(f"descriptor group {self.group} differs from cocycle A={phi.group.spec()}")
        return x, group, phi


def read_descriptor(path) -> ExtensionDescriptor:
    try:
        data = json.loads(Path(path).read_text())
        return ExtensionDescriptor(data["base"], str(data["group"]), data["cocycle"])
    except (json.JSONDecodeError, KeyError) as exc:
        raise ParseError(f"extension descriptor: {exc}") from None


def write_descriptor(d: ExtensionDescriptor, path) -> None:
    Path(path).write_text(json.dumps({"base": d.base, "group": d.group, "cocycle": d.cocycle},
                                     indent=2) + "\n")


# ------------------------------------------------------------ invariant rows

INVARIANT_FIELDS = ("knot", "quandle", "cocycle", "polynomial")


@dataclass(frozen=True)
class InvariantRow:
    knot: str
    quandle: str
    cocycle: str
    value: GroupRingElement

    def as_dict(self) -> dict:
        return {"knot": self.knot, "quandle": self.quandle, "cocycle": self.cocycle,
                "polynomial": self.value.to_file_string()}

    def line(self) -> str:
        return "; ".join(self.as_dict()[f] for f in INVARIANT_FIELDS)


def format_rows(rows, fmt: str = "text") -> str:
    if fmt == "text":
        return "".join(r.line() + "\n" for r in rows)
    if fmt == "json":
        return json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=INVARIANT_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r.as_dict())
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def read_anchors_file(path) -> list[RecoveryAnchor]:
    return parse_anchors(Path(path).read_text())


def group_by_value(rows, skip=None) -> list[tuple[GroupRingElement, list[str]]]:
    """Knots sharing an invariant value, in order of first appearance.

    ``skip`` drops one value, typically |X| * e (only trivial colorings).
    """
    groups: dict[GroupRingElement, list[str]] = {}
    for r in rows:
        if skip is not None and r.value == skip:
            continue
        groups.setdefault(r.value, []).append(r.knot)
    return list(groups.items())


def format_value_table(rows, fmt: str = "csv", skip=None) -> str:
    """Two columns, invariant value and the knots attaining it."""
    groups = group_by_value(rows, skip)
    if fmt == "json":
        return json.dumps([{"invariant": str(v), "knots": ks} for v, ks in groups], indent=2) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cocycle invariant", "knot"])
        for v, ks in groups:
            w.writerow([str(v), ", ".join(ks)])
        return buf.getvalue()
    return "".join(f"{v}: {', '.join(ks)}\n" for v, ks in groups)
