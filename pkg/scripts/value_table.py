"""Cocycle invariant values of a braid catalog, grouped by value.

Prints the grouping for both the computed generating cocycle of X6 and the
shipped one, which differ by the automorphism u -> u^3 of Z4.
"""

from __future__ import annotations

import argparse
from collections import defaultdict
from pathlib import Path

from quandlekit.catalog import x6_family
from quandlekit.invariant import cocycle_invariant
from quandlekit.io import read_cocycle
from quandlekit.knot import load_catalog

ROOT = Path(__file__).resolve().parents[1]


def grouped(x, phi, entries):
    table = defaultdict(list)
    for e in entries:
        table[str(cocycle_invariant(x, phi, e.braid))].append(e.name)
    return table


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--catalog", type=Path, default=ROOT / "data" / "seed.knt")
    ap.add_argument("--cocycle", type=Path, default=ROOT / "data" / "x6_z4.coc")
    args = ap.parse_args(argv)

    x, _, phi, _ = x6_family()
    entries = load_catalog(args.catalog)
    for label, c in (("computed", phi), (args.cocycle.name, read_cocycle(args.cocycle))):
        print(f"# {label}")
        for value, names in grouped(x, c, entries).items():
            print(f"{value:>20s}  {', '.join(names)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
