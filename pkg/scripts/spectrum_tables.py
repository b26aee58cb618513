#!/usr/bin/env python3
"""Print operator spectrum tables for the model-space zoo.

Usage: python scripts/spectrum_tables.py [--kappa 1.0]
"""

import argparse

from secondkind import (
    flat_tensor,
    kahler_space_form,
    product,
    scalar,
    space_form,
    spectrum,
)


def fmt_clusters(clusters):
    return ", ".join(f"{v:+.4g} (x{m})" for v, m in clusters)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kappa", type=float, default=1.0)
    args = parser.parse_args()
    k = args.kappa

    rows = []
    for n in (3, 4, 5):
        rows.append((f"S^{n}({k:g})", space_form(n, k)))
        rows.append((f"H^{n}(-{k:g})", space_form(n, -k)))
    for m in (1, 2, 3):
        rows.append((f"CP^{m}({k:g})", kahler_space_form(m, k)[0]))
    for n in (3, 4):
        rows.append((f"S^{n}({k:g}) x R", product(space_form(n, k), flat_tensor(1))))
    rows.append((f"S^2({k:g}) x S^2({k:g})",
                 product(space_form(2, k), space_form(2, k))))
    rows.append((f"S^2({k:g}) x S^3({k:g})",
                 product(space_form(2, k), space_form(3, k))))
    rows.append((f"CP^1({k:g}) x CP^1({k:g})",
                 product(kahler_space_form(1, k)[0], kahler_space_form(1, k)[0])))
    rows.append((f"CP^1({k:g}) x CP^2({k:g})",
                 product(kahler_space_form(1, k)[0], kahler_space_form(2, k)[0])))

    print(f"{'space':24s} {'n':>2s} {'N':>3s} {'scalar':>9s}  spectrum clusters")
    for name, r in rows:
        s = spectrum(r)
        print(f"{name:24s} {r.dim:2d} {s.N:3d} {scalar(r):9.4g}  {fmt_clusters(s.clusters)}")


if __name__ == "__main__":
    main()
