"""Scan small connected quandles for cocycles that detect chirality.

For every connected catalog quandle up to the given order and every modulus,
the generating cocycle is evaluated on each knot. A value that differs from
its conjugate means the cocycle separates the knot from its reversed mirror.
"""

from __future__ import annotations

import argparse
import logging

from quandlekit.catalog import catalog
from quandlekit.errors import QuandleKitError
from quandlekit.homology import h2_cohomology
from quandlekit.invariant import cocycle_invariant, is_asymmetric
from quandlekit.knot import seed_catalog
from quandlekit.quandle import is_connected

log = logging.getLogger("quandlekit.scripts")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=9)
    ap.add_argument("--moduli", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    args = ap.parse_args(argv)

    knots = [e for e in seed_catalog() if e.braid.letters]
    for name, x in catalog(args.max_size).items():
        if x.size < 3 or not is_connected(x):
            continue
        for m in args.moduli:
            try:
                structure, basis = h2_cohomology(x, m)
            except QuandleKitError as exc:
                log.warning("%s Z%d skipped: %s", name, m, exc)
                continue
            if not basis:
                continue
            phi = basis[-1]
            hits = [e.name for e in knots if is_asymmetric(cocycle_invariant(x, phi, e.braid))]
            print(f"{name:8s} Z{m}: H^2 = {str(structure):10s} chiral detections: {', '.join(hits) or '-'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
