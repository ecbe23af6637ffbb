#!/usr/bin/env python3
"""Spectral-gap table for the standard-pair SL_2(F_p) Cayley graphs.

Prints one row per prime: n, degree, lambda2 (dense oracle), gap, and the
exact diameter, so the family's expansion trend is visible at a glance.

Usage: python scripts/scan_sl2_family.py [p1 p2 ...]   (default 3 5 7 11 13)
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from expforge.cayley import build_cayley
from expforge.ffield import make_field
from expforge.gensets import sl2_standard
from expforge.spectral import dense_lambda2, diameter


def main(argv):
    primes = [int(x) for x in argv] or [3, 5, 7, 11, 13]
    print(f"{'p':>4} {'n':>6} {'deg':>4} {'lambda2':>12} {'gap':>12} {'diam':>5}")
    for p in primes:
        graph = build_cayley(sl2_standard(make_field(p)))
        lam = dense_lambda2(graph)
        diam = diameter(graph)
        print(f"{p:>4} {graph.n:>6} {graph.degree:>4} {lam:>12.8f} {1 - lam:>12.8f} {diam.value:>5}")


if __name__ == "__main__":
    main(sys.argv[1:])
