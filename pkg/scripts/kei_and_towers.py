"""Experiments on kei extensions and on splitting an extension into a tower.

For each dihedral base, every Z2 cocycle class is checked against the kei
criterion. Then the Z4 extension of X6 is split through each subgroup of Z4
and the middle and top layers are reported.
"""

from __future__ import annotations

import argparse

from quandlekit.abelian import AbelianGroup
from quandlekit.catalog import x6_family
from quandlekit.extension import abelian_extension, detect_abelian_extension, kei_extension_check, tower_decompose
from quandlekit.homology import all_cocycles, cohomology_class_order
from quandlekit.quandle import dihedral, is_connected, is_homomorphism, is_kei


def kei_survey(orders, m: int) -> None:
    g = AbelianGroup.cyclic(m)
    for n in orders:
        x = dihedral(n)
        rows = []
        for phi in all_cocycles(x, m):
            total = abelian_extension(x, g, phi).total
            rows.append((cohomology_class_order(x, phi), kei_extension_check(x, phi), is_kei(total)))
        agree = all(a == b for _, a, b in rows)
        print(f"R{n} Z{m}: {len(rows)} classes, criterion agrees with direct check: {agree}, "
              f"kei extensions: {sum(b for *_, b in rows)}")


def tower_survey() -> None:
    x, g, phi, e = x6_family()
    for gens in ([], [(2,)], [(1,)]):
        t = tower_decompose(x, g, phi, gens)
        ok = is_homomorphism(t.top.total, e, t.witness)
        mid = t.middle.total
        d = detect_abelian_extension(mid) if mid.size > x.size else None
        print(f"subgroup {gens or 'trivial'}: middle order {mid.size} (connected {is_connected(mid)}), "
              f"top A = {t.top.group.factors or '0'}, iso to E24: {ok}"
              + (f", middle detected over base of order {d.base.size}" if d else ""))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[3, 4, 5, 6, 7])
    ap.add_argument("--modulus", type=int, default=2)
    args = ap.parse_args(argv)
    kei_survey(args.orders, args.modulus)
    tower_survey()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
