"""The two word metrics on H3(Z) x Z: the sqrt(n) gap and the ratio rho_1/rho_2."""

import argparse

from pansu_rate import asymptotics as asy
from pansu_rate.lattice import builtin_genset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gap", type=int, nargs="+", default=[16, 25, 36, 64, 100])
    ap.add_argument("--radii", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for r in asy.sqrt_gap_experiment(args.gap):
        print(f"n={r.n:4d}  g_n={r.g:4d}  g_n/sqrt(n)={r.ratio:.4f}  rho_1-n={r.rho1_minus_n}")
    rows = asy.ratio_convergence(builtin_genset("PROD_S1"), builtin_genset("PROD_S2"),
                                 args.radii, samples=args.samples, seed=args.seed)
    for r in rows:
        print(f"R={r.n:3d}  max |rho_1/rho_2 - 1| = {r.deviation:.4f}  ({r.samples} elements)")


if __name__ == "__main__":
    main()
