"""Detection on an extension whose fiber group is not cyclic.

Builds the Z2 x Z2 extension of the double transpositions in S5 from two
basis cocycles and runs the extension detector on the 60-element result.
"""

from __future__ import annotations

import argparse

from quandlekit.extension import abelian_extension, detect_abelian_extension, pair_cocycles
from quandlekit.homology import h2_cohomology
from quandlekit.quandle import conjugation_sym, is_connected, is_faithful


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.parse_args(argv)
    x = conjugation_sym(5, (2, 2))
    structure, basis = h2_cohomology(x, 2)
    print(f"base order {x.size}, H^2(X; Z2) = {structure}")
    pc = pair_cocycles(basis[0], basis[1])
    y = abelian_extension(x, pc.group, pc).total
    print(f"extension order {y.size}, connected {is_connected(y)}, faithful {is_faithful(y)}")
    d = detect_abelian_extension(y)
    h = d.constant.group()
    print(f"fiber size {d.fiber_size}, |H_beta| = {h.order}, transitive {h.is_transitive()}, "
          f"cyclic {h.is_cyclic()}, abelian claim {d.is_abelian}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
