"""Command-line interface: ``quandlekit <command> ...``.

Exit codes: 0 success, 2 parse error, 3 axiom or cocycle violation,
4 size limit, 5 not a knot, 6 non-integral recovery.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .abelian import AbelianGroup
from .coloring import count_colorings, count_colorings_fixed
from .errors import IsFaithful, ParseError, QuandleKitError
from .extension import abelian_extension, detect_abelian_extension
from .homology import cohomology_from_homology, h2_cohomology, h2_integral
from .invariant import GroupRingElement, cocycle_invariant, recover_invariant
from .io import (ExtensionDescriptor, InvariantRow, format_rows, format_value_table, read_anchors_file,
                 read_cocycle, read_quandle, write_cocycle, write_descriptor, write_quandle)
from .knot import KnotEntry, connect_sum, load_catalog, mirror, parse_braid, reverse_mirror
from .quandle import (are_isomorphic, inner_group, is_connected, is_faithful, is_homogeneous,
                      is_kei, is_latin, proper_quotients)

log = logging.getLogger("quandlekit")


@dataclass
class JobSpec:
    command: str
    inputs: list[Path] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    output: Path | None = None

    def check_inputs(self) -> None:
        for p in self.inputs:
            if not p.is_file():
                raise ParseError(f"no such file: {p}")


def _knots(args_knots, strands=None) -> list[KnotEntry]:
    """Braid strings or .knt catalog paths, in the order given."""
    out = []
    for item in args_knots:
        if item.lstrip().startswith("["):
            w = parse_braid(item, strands)
            out.append(KnotEntry(str(w), w))
        else:
            path = Path(item)
            if not path.is_file():
                raise ParseError(f"not a braid word or catalog file: {item}")
            out.extend(load_catalog(path))
    return out


# ---------------------------------------------------------------- commands


def cmd_quandle(args) -> int:
    JobSpec("quandle", [Path(f) for f in args.files]).check_inputs()
    qs = [read_quandle(f) for f in args.files]
    if args.action == "check":
        for f, q in zip(args.files, qs):
            flags = ["valid"] + [name for name, pred in
                                 (("connected", is_connected), ("faithful", is_faithful), ("kei", is_kei))
                                 if pred(q)]
            print(f"{f}: {', '.join(flags)}")
    elif args.action == "info":
        for f, q in zip(args.files, qs):
            print(f"{f}: order {q.size}")
            for name, pred in (("connected", is_connected), ("faithful", is_faithful), ("kei", is_kei),
                               ("latin", is_latin), ("homogeneous", is_homogeneous)):
                print(f"  {name}: {str(pred(q)).lower()}")
            print(f"  inner group order: {inner_group(q).order}")
    elif args.action == "iso":
        if len(qs) != 2:
            raise ParseError("iso needs exactly two quandle files")
        w = are_isomorphic(qs[0], qs[1])
        if w is None:
            print("not isomorphic")
        else:
            print("isomorphic: " + " ".join(str(i + 1) for i in w.images))
    elif args.action == "quotients":
        for f, q in zip(args.files, qs):
            orders = sorted(p.size for p in proper_quotients(q))
            print(f"{f}: " + (" ".join(map(str, orders)) if orders else "none"))
    return 0


def cmd_cohomology(args) -> int:
    JobSpec("cohomology", [Path(args.quandle)]).check_inputs()
    group = AbelianGroup.parse(args.coefficients)
    x = read_quandle(args.quandle)
    structure, basis = h2_cohomology(x, group)
    print("trivial" if structure.is_trivial else str(structure))
    if len(group.factors) == 1:
        h2 = h2_integral(x)
        predicted = cohomology_from_homology(h2, group.factors[0])
        status = "agrees" if predicted == structure else "DISAGREES"
        print(f"H_2 = {h2}; Hom(H_2, {group}) = {predicted} ({status})")
    if args.basis:
        if not basis:
            log.warning("no nontrivial class; nothing written to %s", args.basis)
        else:
            write_cocycle(basis[-1], args.basis)
    return 0


def cmd_extend(args) -> int:
    JobSpec("extend", [Path(args.quandle), Path(args.cocycle)]).check_inputs()
    x = read_quandle(args.quandle)
    phi = read_cocycle(args.cocycle)
    e = abelian_extension(x, phi.group, phi)
    print(f"extension of order {e.total.size} by {phi.group}")
    if args.out:
        write_quandle(e.total, args.out)
        if args.descriptor:
            write_descriptor(ExtensionDescriptor(str(Path(args.quandle)), phi.group.spec(),
                                                 str(Path(args.cocycle))), args.descriptor)
    return 0


def cmd_detect(args) -> int:
    JobSpec("detect", [Path(args.quandle)]).check_inputs()
    y = read_quandle(args.quandle)
    try:
        d = detect_abelian_extension(y)
    except IsFaithful:
        print("faithful: nothing to detect")
        return 0
    if d.is_abelian:
        print(f"abelian extension: base order {d.base.size}, A={d.group}")
        if args.cocycle:
            write_cocycle(d.cocycle, args.cocycle)
        if args.base:
            write_quandle(d.base, args.base)
    else:
        print(f"constant-cocycle extension: base order {d.base.size}, fiber {d.fiber_size}, "
              f"|H_beta| = {d.constant.group().order}")
    return 0


def cmd_color(args) -> int:
    JobSpec("color", [Path(args.quandle)]).check_inputs()
    x = read_quandle(args.quandle)
    for entry in _knots(args.knots, args.strands):
        w = entry.braid
        if args.composite:
            r = parse_braid(args.composite)
            w = connect_sum(r, mirror(w) if args.composite_mirror else w)
        if args.fixed is not None:
            n = count_colorings_fixed(x, args.fixed - 1, w)
        else:
            n = count_colorings(x, w)
        print(n if len(args.knots) == 1 and args.knots[0].lstrip().startswith("[") else f"{entry.name} {n}")
    return 0


def cmd_invariant(args) -> int:
    knots = list(args.knots)
    if args.batch:
        knots.append(args.batch)
    JobSpec("invariant", [Path(args.quandle), Path(args.cocycle)]).check_inputs()
    x = read_quandle(args.quandle)
    phi = read_cocycle(args.cocycle)
    anchors = read_anchors_file(args.recover) if args.recover else None
    e = abelian_extension(x, phi.group, phi).total if anchors is not None else None
    qid, cid = Path(args.quandle).stem, Path(args.cocycle).stem
    rows = []
    for entry in _knots(knots):
        if anchors is not None:
            value = recover_invariant(e, x, phi.group, anchors, entry.braid)
        else:
            value = cocycle_invariant(x, phi, entry.braid)
        rows.append(InvariantRow(entry.name, qid, cid, value))
    if args.out:
        fmt = {".csv": "csv", ".json": "json"}.get(Path(args.out).suffix, "text")
        if args.layout == "table":
            skip = None if args.keep_trivial else GroupRingElement.scalar(phi.group, x.size)
            Path(args.out).write_text(format_value_table(rows, fmt, skip))
        else:
            Path(args.out).write_text(format_rows(rows, fmt))
    for r in rows:
        print(f"{r.knot}; {r.quandle}; {r.cocycle}; {r.value}")
    return 0


def _scan_cell(path: Path, entries, r_word):
    x = read_quandle(path)
    rows = []
    for entry in entries:
        row = {"quandle": path.stem, "knot": entry.name, "colorings": count_colorings(x, entry.braid)}
        if r_word is not None:
            a = count_colorings(x, connect_sum(r_word, entry.braid))
            b = count_colorings(x, connect_sum(r_word, reverse_mirror(entry.braid)))
            row.update({"with_R": a, "with_R_rm": b, "distinguished": a != b})
        rows.append(row)
    return rows


def _cache_key(path: Path, entries, r_word) -> str:
    h = hashlib.sha256()
    h.update(__version__.encode())
    h.update(path.read_bytes())
    for e in entries:
        h.update(f"{e.name} {e.braid.describe()}\n".encode())
    h.update(str(r_word.describe() if r_word else "-").encode())
    return h.hexdigest()


def cmd_scan(args) -> int:
    qdir = Path(args.quandles)
    files = sorted(qdir.glob("*.qnd")) if qdir.is_dir() else [qdir]
    JobSpec("scan", files + [Path(args.knots)]).check_inputs()
    entries = load_catalog(args.knots)
    r_word = parse_braid(args.rm_distinguish) if args.rm_distinguish else None
    cache = Path(args.cache) if args.cache else None
    rows = []
    for path in files:
        cached = None
        if cache is not None:
            key = _cache_key(path, entries, r_word)
            record = cache / f"{key}.json"
            if record.is_file():
                cached = json.loads(record.read_text())
                log.info("cache hit %s", path.name)
        if cached is None:
            cached = _scan_cell(path, entries, r_word)
            if cache is not None:
                cache.mkdir(parents=True, exist_ok=True)
                record.write_text(json.dumps(cached, sort_keys=True) + "\n")
                log.info("cache miss %s", path.name)
        rows.extend(cached)
    out = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    for row in rows:
        line = f"{row['quandle']} {row['knot']} {row['colorings']}"
        if r_word is not None:
            line += f" {row['with_R']} {row['with_R_rm']}" + (" DISTINGUISHED" if row["distinguished"] else "")
        print(line)
    return 0


# ------------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quandlekit", description="Finite quandles, knot colorings and cocycle invariants.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("quandle", help="check, describe, compare or quotient quandle files")
    q.add_argument("action", choices=["check", "info", "iso", "quotients"])
    q.add_argument("files", nargs="+")
    q.set_defaults(func=cmd_quandle)

    c = sub.add_parser("cohomology", help="second cohomology with coefficients in A")
    c.add_argument("quandle")
    c.add_argument("coefficients", help="e.g. Z4 or 2x4")
    c.add_argument("--basis", help="write a class representative of maximal order")
    c.set_defaults(func=cmd_cohomology)

    e = sub.add_parser("extend", help="build the abelian extension E(X, A, phi)")
    e.add_argument("quandle")
    e.add_argument("cocycle")
    e.add_argument("--out")
    e.add_argument("--descriptor", help="also write an extension descriptor (JSON)")
    e.set_defaults(func=cmd_extend)

    d = sub.add_parser("detect", help="recognize a quandle as an extension of its inner image")
    d.add_argument("quandle")
    d.add_argument("--cocycle", help="write the detected cocycle here")
    d.add_argument("--base", help="write the detected base quandle here")
    d.set_defaults(func=cmd_detect)

    k = sub.add_parser("color", help="count colorings of braid closures")
    k.add_argument("quandle")
    k.add_argument("knots", nargs="+", help="braid words like '[1,1,1]' or .knt files")
    k.add_argument("--strands", type=int)
    k.add_argument("--fixed", type=int, help="fix the base point color (1-based)")
    k.add_argument("--composite", help="connect-sum each knot with this braid first")
    k.add_argument("--composite-mirror", action="store_true", help="use the mirror of each knot in the sum")
    k.set_defaults(func=cmd_color)

    i = sub.add_parser("invariant", help="cocycle invariants")
    i.add_argument("quandle")
    i.add_argument("cocycle")
    i.add_argument("knots", nargs="*")
    i.add_argument("--batch", help="knot catalog (.knt)")
    i.add_argument("--recover", help="anchors JSON; compute from extension coloring counts instead")
    i.add_argument("--out", help="write rows (.csv, .json or text)")
    i.add_argument("--layout", choices=["rows", "table"], default="rows",
                   help="one row per knot, or knots grouped by invariant value")
    i.add_argument("--keep-trivial", action="store_true",
                   help="in table layout, keep knots with only trivial colorings")
    i.set_defaults(func=cmd_invariant)

    s = sub.add_parser("scan", help="coloring counts over a directory of quandles")
    s.add_argument("quandles", help="directory of .qnd files (or one file)")
    s.add_argument("knots", help="knot catalog (.knt)")
    s.add_argument("--rm-distinguish", metavar="R", help="compare R#K with R#rm(K)")
    s.add_argument("--cache", help="directory for cached results")
    s.add_argument("--out", help="write the JSON report here")
    s.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except QuandleKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
