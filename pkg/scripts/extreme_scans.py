"""Almost-extreme scans: linear defect in the product, square-root defect in H3."""

import argparse
import json

from pansu_rate import asymptotics as asy
from pansu_rate import extremal as ext


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.05, 0.025])
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    out = {}
    for name, scan in [("midpoint", ext.midpoint_defect_scan),
                       ("abnormal", ext.abnormal_vertical_scan),
                       ("control", ext.heis_extreme_control_scan)]:
        rows = [scan(e, args.samples, args.seed) for e in args.eps]
        slope = asy.fit_rate([(r.eps, r.sup_defect) for r in rows]).slope
        out[name] = {"slope": slope, "rows": [r.to_dict() for r in rows]}
        if not args.json:
            print(f"{name:9s} slope {slope:.3f}  " +
                  "  ".join(f"eps={r.eps:g}: {r.sup_defect:.4f}" for r in rows))
    if args.json:
        print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
