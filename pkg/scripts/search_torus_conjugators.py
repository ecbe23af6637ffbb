#!/usr/bin/env python3
"""Randomized conjugator search for torus-conjugate generating sets.

For each field size, runs the seeded search and reports the best lambda2
of Cay(SL_2(F_q), {h^-1 C^{+-1} h}) together with the 19/20 threshold and
the characteristic Ramanujan bound 2 sqrt(p)/(p+1).

Usage: python scripts/search_torus_conjugators.py [trials [seed]]
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from expforge.ffield import make_field
from expforge.gensets import nonsplit_torus, search_conjugator

CASES = [(3, 1), (5, 1), (3, 2), (2, 2), (7, 1)]


def main(argv):
    trials = int(argv[0]) if argv else 200
    seed = int(argv[1]) if len(argv) > 1 else 20240
    print(f"{'q':>5} {'|H|':>4} {'n':>5} {'deg':>4} {'lambda2':>10} "
          f"{'<19/20':>7} {'2sqrt(p)/(p+1)':>15} {'met':>4} {'sec':>6}")
    for p, k in CASES:
        spec = make_field(p, k)
        t0 = time.time()
        torus = nonsplit_torus(spec, 2)
        found = search_conjugator(torus, trials=trials, seed=seed)
        print(f"{p**k:>5} {len(torus):>4} {found.n:>5} {found.degree:>4} "
              f"{found.lambda2:>10.6f} {str(found.lambda2 < 0.95):>7} "
              f"{found.char_ramanujan_bound:>15.6f} {str(found.below_char_ramanujan):>4} "
              f"{time.time() - t0:>6.1f}")


if __name__ == "__main__":
    main(sys.argv[1:])
