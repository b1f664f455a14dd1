"""Command-line front end.

Exit codes: 0 on success, 2 for budget or validation failures, 64 for
usage errors (unknown subcommand or flag).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import asymptotics as asy
from . import extremal as ext
from . import geometry as geo
from .lattice import (
    BudgetExceeded,
    Group,
    LatticeElement,
    builtin_genset,
    enumerate_ball,
    load_genset,
    word_distance,
)
from .render import RenderSpec, render, write_atomic

EX_OK, EX_BUDGET, EX_USAGE = 0, 2, 64

GENSETS = {("heis", "std"): "HEIS_STD", ("prod", "s1"): "PROD_S1",
           ("prod", "s2"): "PROD_S2", ("z3", "std"): "Z3_STD"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> tuple:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def resolve_genset(args):
    group = Group(args.group)
    if getattr(args, "genset_file", None):
        return load_genset(args.genset_file, group, close_inverses=True)
    label = GENSETS.get((args.group, args.genset.lower()))
    if label is None:
        raise ValueError(f"no builtin generating set {args.genset!r} for group {args.group!r}")
    return builtin_genset(label)


def _element(group: Group, point: tuple) -> LatticeElement:
    if any(c != int(c) for c in point):
        raise ValueError("lattice points need integer coordinates")
    p = [int(c) for c in point]
    if group is Group.PROD:
        if len(p) != 4:
            raise ValueError("product points are v,x,y,z")
        return LatticeElement.prod(*p)
    if len(p) != 3:
        raise ValueError("points are x,y,z")
    return LatticeElement(group, 0, *p)


def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_report(args, rep: dict) -> None:
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    _emit(args, asy.report_csv(rep) if fmt == "csv" else asy.report_json(rep))


# --------------------------------------------------------------------------
# subcommands

def cmd_dist(args) -> int:
    p = args.point
    if args.metric == "d3":
        if len(p) != 3:
            raise ValueError("d3 points are x,y,z")
        value = geo.d3(p)
    elif args.metric == "dinf":
        if len(p) != 4:
            raise ValueError("dinf points are v,x,y,z")
        value = geo.dinf(geo.ProdPoint(p[0], geo.HeisPoint(*p[1:])))
    else:
        s = resolve_genset(args)
        value = word_distance(s, _element(s.group, p), budget=args.budget)
    print(f"{value:.12g}" if isinstance(value, float) else value)
    return EX_OK


def cmd_word_dist(args) -> int:
    args.metric = "word"
    return cmd_dist(args)


def cmd_ball(args) -> int:
    s = resolve_genset(args)
    try:
        census = enumerate_ball(s, args.radius, max_elements=args.max_elements, workers=args.threads)
    except BudgetExceeded as exc:
        if args.out and exc.partial is not None:
            write_atomic(args.out + ".partial", exc.partial.to_csv())
        print(f"budget exceeded: {exc}; complete up to radius {exc.last_radius}", file=sys.stderr)
        return EX_BUDGET
    _emit(args, census.to_csv())
    return EX_OK


def cmd_geodesic(args) -> int:
    plan = geo.synthesize_geodesic(geo.HeisPoint(*args.point))
    print(f"kind: {plan.kind.value}")
    print("segments: " + ", ".join(str(s) for s in plan.segments))
    print(f"length: {plan.length:.12g}")
    if args.render:
        render(RenderSpec(mode="geodesic", point=tuple(args.point), out=args.render,
                          resolution=max(args.resolution, 64)))
    return EX_OK


def cmd_ghrate(args) -> int:
    s = resolve_genset(args)
    reps = [asy.gh_distortion(s, n, samples=args.samples, seed=args.seed) for n in args.ns]
    rows = [{"n": r.n, "distortion": r.distortion, "sampled_sup": r.sampled_sup,
             "witness_gap": max(w.gap for w in r.witnesses)} for r in reps]
    series = [(r["n"], r["distortion"]) for r in rows if r["distortion"] > 0]
    fit = asy.fit_rate(series) if len(series) >= 3 else None
    _emit_report(args, asy.report("ghrate", s.label, args.seed, rows, fit))
    return EX_OK


def cmd_volfit(args) -> int:
    s = resolve_genset(args)
    census = enumerate_ball(s, args.radius, workers=args.threads)
    d = asy.homogeneous_dimension(s.group)
    fit = asy.fit_volume(census, d, args.window, label=s.label)
    rows = [{"n": n, "residual": r} for n, r in fit.residuals]
    rep = asy.report("volfit", s.label, args.seed, rows)
    rep["c_hat"] = fit.c_hat
    if s.group is Group.HEIS:
        rep["unit_ball_volume"] = asy.unit_ball_volume("d3")
    _emit_report(args, rep)
    return EX_OK


def cmd_gap(args) -> int:
    rows = asy.sqrt_gap_experiment(args.n, budget=args.budget)
    rep = asy.report("gap", "PROD_S2", args.seed, rows)
    if args.out:
        _emit_report(args, rep)
    else:
        for r in rows:
            print(f"{r.n},{r.g},{r.ratio}")
    return EX_OK


def cmd_extreme(args) -> int:
    fam = ext.extreme_family(args.a, args.b, args.family)
    out = {"a": fam.a, "b": fam.b, "group": fam.group,
           "points": [list(p) if fam.group == "heis" else [p.v, *p.h] for p in fam.points],
           "deviation": fam.deviation, "sphere_deviation": fam.sphere_deviation}
    scans = {"midpoint": ext.midpoint_defect_scan, "abnormal": ext.abnormal_vertical_scan,
             "control": ext.heis_extreme_control_scan}
    if args.scan:
        out["scans"] = [scans[args.scan](eps, args.samples, args.seed).to_dict() for eps in args.eps]
        series = [(r["eps"], r["sup_defect"]) for r in out["scans"] if r["sup_defect"] > 0]
        if len(series) >= 3:
            out["slope"] = asy.fit_rate(series).slope
    _emit(args, json.dumps(out, indent=2) + "\n")
    return EX_OK


def cmd_gronwall(args) -> int:
    rows = geo.gronwall_experiment(args.eps, pairs=args.samples, seed=args.seed)
    fit = asy.fit_rate([(r.eps, r.max_gap) for r in rows]) if len(rows) >= 3 else None
    _emit_report(args, asy.report("gronwall", "controls", args.seed, rows, fit))
    return EX_OK


def cmd_render(args) -> int:
    spec = RenderSpec(metric=args.metric, mode=args.mode, plane=args.plane,
                      resolution=args.resolution, out=args.out,
                      point=tuple(args.point) if args.point else None)
    text = render(spec)
    if not args.out:
        sys.stdout.write(text)
    return EX_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=["json", "csv"], default=None)

    gs = argparse.ArgumentParser(add_help=False)
    gs.add_argument("--group", choices=[g.value for g in Group], default="heis")
    gs.add_argument("--genset", default="std", help="std, s1 or s2")
    gs.add_argument("--genset-file", default=None,
                    help="one generator per line; inverses are added")

    p = _Parser(prog="pansu-rate", description="Word metrics versus their asymptotic cones.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("dist", parents=[common, gs], help="exact point distances")
    q.add_argument("--metric", choices=["d3", "dinf", "word"], default="d3")
    q.add_argument("--point", type=_floats, required=True)
    q.add_argument("--budget", type=int, default=64)
    q.set_defaults(func=cmd_dist)

    q = sub.add_parser("word-dist", parents=[common, gs], help="word length by bidirectional BFS")
    q.add_argument("--point", type=_floats, required=True)
    q.add_argument("--budget", type=int, default=64)
    q.set_defaults(func=cmd_word_dist)

    q = sub.add_parser("ball", parents=[common, gs], help="sphere and ball sizes as CSV")
    q.add_argument("--radius", type=int, required=True)
    q.add_argument("--max-elements", type=int, default=None)
    q.set_defaults(func=cmd_ball)

    q = sub.add_parser("geodesic", parents=[common], help="canonical d3 geodesic")
    q.add_argument("--point", type=_floats, required=True)
    q.add_argument("--render", default=None, help="SVG path for the planar projection")
    q.add_argument("--resolution", type=int, default=64)
    q.set_defaults(func=cmd_geodesic)

    q = sub.add_parser("ghrate", parents=[common, gs], help="distortion series and rate fit")
    q.add_argument("--ns", type=_ints, default=(8, 16, 32))
    q.set_defaults(func=cmd_ghrate, samples=2000)

    q = sub.add_parser("volfit", parents=[common, gs], help="leading volume coefficient")
    q.add_argument("--radius", type=int, default=60)
    q.add_argument("--window", type=_ints, default=(20, 60))
    q.set_defaults(func=cmd_volfit)

    q = sub.add_parser("gap", parents=[common], help="rho_2(gamma_n) - n experiment")
    q.add_argument("--n", type=_ints, default=(16, 25, 36, 64, 100))
    q.add_argument("--budget", type=int, default=256)
    q.set_defaults(func=cmd_gap)

    q = sub.add_parser("extreme", parents=[common], help="extreme families and scans")
    q.add_argument("--a", type=float, default=1.0)
    q.add_argument("--b", type=float, default=1.0)
    q.add_argument("--family", choices=["heis", "prod"], default="heis")
    q.add_argument("--scan", choices=["midpoint", "abnormal", "control"], default=None)
    q.add_argument("--eps", type=_floats, default=(0.1, 0.05, 0.025))
    q.set_defaults(func=cmd_extreme, samples=100_000)

    q = sub.add_parser("gronwall", parents=[common], help="endpoint gap versus control gap")
    q.add_argument("--eps", type=_floats, default=(0.1, 0.05, 0.025))
    q.set_defaults(func=cmd_gronwall, samples=200)

    q = sub.add_parser("render", parents=[common], help="SVG sections, OBJ mesh, geodesics")
    q.add_argument("--metric", choices=["d3", "dinf"], default="d3")
    q.add_argument("--mode", choices=["section", "mesh", "geodesic"], default="section")
    q.add_argument("--plane", default="y=0")
    q.add_argument("--resolution", type=int, default=256)
    q.add_argument("--point", type=_floats, default=None)
    q.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EX_BUDGET
    except (ValueError, KeyError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_BUDGET


if __name__ == "__main__":
    sys.exit(main())
