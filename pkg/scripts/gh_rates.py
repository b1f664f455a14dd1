"""Distortion of the dilation correspondence for H3(Z) and the S1 product metric."""

import argparse
import math

from pansu_rate import asymptotics as asy
from pansu_rate.lattice import builtin_genset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--heis", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--prod", type=int, nargs="+", default=[25, 50, 100, 200, 400])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    heis = builtin_genset("HEIS_STD")
    series = []
    for n in args.heis:
        rep = asy.gh_distortion(heis, n, samples=args.samples, seed=args.seed)
        series.append((n, rep.distortion))
        print(f"HEIS_STD n={n:4d}  D_n={rep.distortion:.5f}  n*D_n={n * rep.distortion:.3f}")
    if len(series) >= 3:
        print(f"  slope {asy.fit_rate(series).slope:.4f}")

    s1 = builtin_genset("PROD_S1")
    series = []
    for n in args.prod:
        rep = asy.gh_distortion(s1, n, samples=0)
        gap = rep.witnesses[0].gap
        rec = rep.recorded[0]
        series.append((n, gap))
        print(f"PROD_S1  n={n:4d}  witness gap={gap:.5f}  gap*sqrt(n)={gap * math.sqrt(n):.3f}  "
              f"(n;0,0,±n) pair: word {rec.scaled_word:.4f} limit {rec.limit:.4f}")
    if len(series) >= 3:
        print(f"  slope {asy.fit_rate(series).slope:.4f}")


if __name__ == "__main__":
    main()
