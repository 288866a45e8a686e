"""Oracle block count as the conjugator box grows (element box fixed)."""

import argparse
import time

from reidemeister.grp import PHI
from reidemeister.oracle import BoxSpec, cross_validate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v-bound", type=int, default=6)
    ap.add_argument("--n-bound", type=int, default=4)
    ap.add_argument("--z-bound", type=int, default=4)
    ap.add_argument("--conj", type=int, nargs="+", default=[2, 4, 6, 8, 10, 12, 14, 16, 20])
    args = ap.parse_args()
    print(f"{'conj v':>7} {'blocks':>7} {'mismatches':>11} {'seconds':>8}  largest blocks")
    for cv in args.conj:
        t0 = time.perf_counter()
        r = cross_validate(PHI, BoxSpec(args.v_bound, args.n_bound, cv, args.z_bound))
        dt = time.perf_counter() - t0
        print(f"{cv:>7} {r.blocks:>7} {len(r.mismatches):>11} {dt:>8.2f}  {r.block_sizes[:6]}")


if __name__ == "__main__":
    main()
