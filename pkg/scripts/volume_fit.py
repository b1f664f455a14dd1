"""Fit the leading growth coefficient of H3(Z) and compare with the limit ball volume."""

import argparse

from pansu_rate import asymptotics as asy
from pansu_rate.lattice import builtin_genset, enumerate_ball


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=60)
    ap.add_argument("--window", type=int, nargs=2, default=(20, 60))
    args = ap.parse_args()

    census = enumerate_ball(builtin_genset("HEIS_STD"), args.radius)
    fit = asy.fit_volume(census, 4, args.window, label="HEIS_STD")
    vol = asy.unit_ball_volume("d3")
    print(f"|B({args.radius})| = {census.ball(args.radius)}")
    print(f"c_hat = {fit.c_hat:.6f}   vol(B_d3(1)) = {vol:.6f}   rel. error {abs(fit.c_hat - vol) / vol:.4%}")
    print(f"normalised residuals: max {fit.max_abs_residual():.4f}, median {fit.median_abs_residual():.4f}")
    for n in range(10, args.radius + 1, 10):
        print(f"  n={n:3d}  |S(n)|/n^3 = {census.sphere(n) / n ** 3:.4f}")


if __name__ == "__main__":
    main()
