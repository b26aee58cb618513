#!/usr/bin/env python3
"""Scan nonnegativity thresholds of equal-curvature product models against
the closed-form constants.

For sphere products the computed threshold lands exactly on the constant
A(n1, n2). For complex projective products the computed threshold sits
strictly below B(m1, m2); the gap column quantifies how much slack the
constant leaves, which is why the equal-curvature iff fails there at small m
(see the iff-kahler harness findings).

Usage: python scripts/threshold_scan.py [--max-n 6] [--max-m 3]
"""

import argparse

from secondkind import (
    a_const,
    b_const,
    flat_tensor,
    kahler_space_form,
    nonneg_threshold,
    product,
    space_form,
    spectrum,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--max-m", type=int, default=3)
    args = parser.parse_args()

    print("one flat direction: threshold vs n + (n-2)/n")
    print(f"  {'n':>3s} {'threshold':>12s} {'constant':>12s} {'gap':>10s}")
    for n in range(4, args.max_n + 5):
        thr = nonneg_threshold(spectrum(product(space_form(n - 1, 1.0), flat_tensor(1))))
        const = a_const(n - 1, 1)
        print(f"  {n:3d} {thr:12.6f} {const:12.6f} {const - thr:10.2e}")

    print("\nsphere x sphere: threshold vs A(n1, n2)")
    print(f"  {'n1':>3s} {'n2':>3s} {'threshold':>12s} {'constant':>12s} {'gap':>10s}")
    for n1 in range(2, args.max_n + 1):
        for n2 in range(n1, args.max_n + 1):
            thr = nonneg_threshold(
                spectrum(product(space_form(n1, 1.0), space_form(n2, 1.0))))
            const = a_const(n1, n2)
            print(f"  {n1:3d} {n2:3d} {thr:12.6f} {const:12.6f} {const - thr:10.2e}")

    print("\ncomplex projective x complex projective: threshold vs B(m1, m2)")
    print(f"  {'m1':>3s} {'m2':>3s} {'threshold':>12s} {'constant':>12s} {'gap':>10s}")
    for m1 in range(1, args.max_m + 1):
        for m2 in range(m1, args.max_m + 1):
            r1, _ = kahler_space_form(m1, 1.0)
            r2, _ = kahler_space_form(m2, 1.0)
            thr = nonneg_threshold(spectrum(product(r1, r2)))
            const = b_const(m1, m2)
            print(f"  {m1:3d} {m2:3d} {thr:12.6f} {const:12.6f} {const - thr:10.2e}")


if __name__ == "__main__":
    main()
