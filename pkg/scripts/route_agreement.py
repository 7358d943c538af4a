"""Deviation of each P route from the matrix-exponential oracle, per N.

    python3 scripts/route_agreement.py --n-max 8 --rotations 5 --seed 0

Prints one line per (N, route) with the worst |P - P_oracle| / max(1, |P_oracle|)
and the smallest weight seen, which is what limits the oracle itself.
"""
import argparse
import time

import numpy as np

from krawx import bikraw, suites
from krawx.bikraw import BiKrawArgs
from krawx.rotations import random_angles


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--rotations", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    rng = np.random.default_rng(ns.seed)
    rots = [random_angles(rng, suites.GENERIC_FLOOR) for _ in range(ns.rotations)]
    print(f"{'N':>2} {'route':>11} {'max dev':>9} {'min |W|':>9} {'secs':>6}")
    for N in range(ns.n_max + 1):
        for route in suites.CROSS_ROUTES:
            t0 = time.perf_counter()
            worst, wmin = 0.0, np.inf
            for a in rots:
                for r, s, i, k in bikraw.all_indices(N):
                    args = BiKrawArgs(r, s, i, k, N)
                    ref = suites.route_value("matexp", args, a)
                    worst = max(worst, abs(suites.route_value(route, args, a) - ref) / max(1.0, abs(ref)))
                    wmin = min(wmin, abs(bikraw.weight(i, k, N, a)))
            print(f"{N:>2} {route:>11} {worst:9.2e} {wmin:9.2e} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
