"""Print the class table, character table, L^2 character and congruences for phi."""

import argparse
import random

from reidemeister import reid, reps
from reidemeister.grp import A, PHI, Elem
from reidemeister.intlat import mat_pow


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--n-max", type=int, default=16)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"R(phi) = {reid.reidemeister_number(PHI)}")
    print("\nclass cells B_i meet L_j (observed on random samples):")
    print(f"{'j mod 6':>8} " + " ".join(f"{c:>10}" for c in reid.CLASS_NAMES))
    for j in range(6):
        cells = []
        sample = [Elem((rng.randint(-99, 99), rng.randint(-99, 99)), j + 6 * rng.randint(-3, 3))
                  for _ in range(args.samples)]
        for name in reid.CLASS_NAMES:
            hit = [h for h in sample if reid.class_name(reid.class_id(h)) == name]
            desc = next((c for c, f in reid.CONDITIONS.items()
                         if hit and all(f(*h.v) for h in hit)), "-")
            cells.append(desc)
        print(f"{j:>8} " + " ".join(f"{c:>10}" for c in cells))

    table = reps.character_table(PHI)
    print("\ntwisted characters on B1..B4:")
    for name, row in zip(table.row_names, table.rows):
        print(f"  {name:>14}: " + " ".join(f"{x:>3}" for x in row))
    print(f"  determinant = {table.determinant}")

    rho1, rho2 = reps.standard_representations(PHI)
    agree = all(2 * reps.l2_twisted_character(g) ==
                (reps.twisted_character(rho1, g) + reps.twisted_character(rho2, g)).to_int()
                for g in (Elem((m, k), n) for n in range(-6, 7)
                          for m in range(-8, 9) for k in range(-8, 9)))
    print(f"\nL^2 counting character = (phi_rho1 + phi_rho2)/2 on the box: {agree}")

    print("\nsum_{d|n} mu(d) R(F^(n/d)):")
    for label, F in (("A", A), ("A^2", mat_pow(A, 2)), ("-A", -A)):
        rows = reid.congruence_check(F, args.n_max)
        print(f"  F = {label:>3}: " + ", ".join(f"{n}:{lhs // n}" for n, lhs, _ in rows[:8])
              + f" ... all divisible: {all(ok for *_, ok in rows)}")


if __name__ == "__main__":
    main()
