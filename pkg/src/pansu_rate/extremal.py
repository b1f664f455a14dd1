"""Extreme points of the limit unit balls and almost-extreme scans.

A collection of points in a unit ball is extreme when all pairwise
distances equal 2.  In exponential coordinates the four-point families of
H3(R) are

    (a, 1-a, a(1-a)/2), (1-a, a, -a(1-a)/2),
    (-b, -(1-b), b(1-b)/2), (-(1-b), -b, -b(1-b)/2),    a, b in [1/2, 1]

and the six-point families of R x H3(R) add (±1; 0, 0, 0).

The scans estimate suprema over tiny accepted regions, so plain rejection
sampling in the box is not enough: proposals mix the uniform box with
dilation-scaled perturbations of anchor points, followed by rounds of local
refinement around the best accepted samples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import geometry as geo


@dataclass(frozen=True)
class ExtremeFamily:
    a: float
    b: float
    group: str
    points: tuple
    deviation: float  # max |d(g_i, g_j) - 2|
    sphere_deviation: float  # max |d(id, g_i) - 1|


def heis_family_points(a: float, b: float) -> list:
    return [
        geo.HeisPoint(a, 1 - a, a * (1 - a) / 2),
        geo.HeisPoint(1 - a, a, -a * (1 - a) / 2),
        geo.HeisPoint(-b, -(1 - b), b * (1 - b) / 2),
        geo.HeisPoint(-(1 - b), -b, -b * (1 - b) / 2),
    ]


def _distance(p, q) -> float:
    if isinstance(p, geo.ProdPoint):
        return geo.dinf_between(p, q)
    return geo.d3_between(p, q)


def _norm(p) -> float:
    return geo.dinf(p) if isinstance(p, geo.ProdPoint) else geo.d3(p)


def verify_mutual_distance(f) -> float:
    points = f.points if isinstance(f, ExtremeFamily) else f
    return max((abs(_distance(p, q) - 2) for p, q in itertools.combinations(points, 2)),
               default=0.0)


def extreme_family(a: float, b: float, group: str = "heis") -> ExtremeFamily:
    if not (0.5 <= a <= 1 and 0.5 <= b <= 1):
        raise ValueError(f"parameters must lie in [1/2, 1], got a={a}, b={b}")
    pts = heis_family_points(a, b)
    if group == "heis":
        points = tuple(pts)
    elif group == "prod":
        points = (geo.ProdPoint(1.0, geo.ORIGIN), geo.ProdPoint(-1.0, geo.ORIGIN)) + tuple(
            geo.ProdPoint(0.0, h) for h in pts)
    else:
        raise ValueError(f"unknown group {group!r}")
    sphere = max(abs(_norm(p) - 1) for p in points)
    return ExtremeFamily(a, b, group, points, verify_mutual_distance(points), sphere)


# --------------------------------------------------------------------------
# vectorised helpers; points are rows (x, y, z) or (v, x, y, z)

def _heis_left_inv_times(P: np.ndarray, q: Sequence[float]) -> np.ndarray:
    """Rows of P^{-1} * q."""
    x, y, z = -P[:, 0], -P[:, 1], -P[:, 2]
    return np.column_stack([x + q[0], y + q[1], z + q[2] + 0.5 * (x * q[1] - y * q[0])])


def _heis_dist_to(P: np.ndarray, q) -> np.ndarray:
    D = _heis_left_inv_times(P, q)
    return geo.d3_array(D[:, 0], D[:, 1], D[:, 2])


def _prod_dist_to(P: np.ndarray, q) -> np.ndarray:
    return np.abs(q[0] - P[:, 0]) + _heis_dist_to(P[:, 1:], q[1:])


def _heis_norm(P):
    return geo.d3_array(P[:, 0], P[:, 1], P[:, 2])


def _prod_norm(P):
    return geo.dinf_array(P[:, 0], P[:, 1], P[:, 2], P[:, 3])


def _heis_compose(anchor, U):
    """anchor * U for a single anchor row and many rows U."""
    return np.column_stack([
        anchor[0] + U[:, 0], anchor[1] + U[:, 1],
        anchor[2] + U[:, 2] + 0.5 * (anchor[0] * U[:, 1] - anchor[1] * U[:, 0])])


def _local(anchor, k, rng, prod, lo=1e-4, hi=1.0):
    """Dilation-scaled uniform perturbations ``anchor * delta_r(u)``, log-uniform r."""
    r = 10 ** rng.uniform(math.log10(lo), math.log10(hi), k)
    U = rng.uniform(-1, 1, (k, 4 if prod else 3))
    if prod:
        U[:, :3] *= r[:, None]
        U[:, 3] *= r * r
        out = _heis_compose(np.asarray(anchor[1:]), U[:, 1:])
        return np.column_stack([anchor[0] + U[:, 0], out])
    U[:, :2] *= r[:, None]
    U[:, 2] *= r * r
    return _heis_compose(np.asarray(anchor), U)


@dataclass(frozen=True)
class ScanReport:
    name: str
    eps: float
    samples: int
    seed: int
    accepted: int
    sup_defect: float
    ratio: float
    argmax: Optional[tuple] = None

    def to_dict(self):
        return asdict(self)


def _sup_scan(name: str, eps: float, samples: int, seed: int, prod: bool,
              accept: Callable, defect: Callable, anchors: Sequence, scale: float,
              rounds: int = 10, elites: int = 16) -> ScanReport:
    rng = np.random.default_rng(seed)
    dim = 4 if prod else 3
    norm = _prod_norm if prod else _heis_norm

    first = samples // 2
    box = rng.uniform(-1, 1, (first // 2, dim))
    locs = [_local(a, (first - first // 2) // len(anchors) + 1, rng, prod) for a in anchors]
    P = np.concatenate([box] + locs)

    best_pts = np.empty((0, dim))
    best_def = np.empty(0)
    n_acc = 0

    def absorb(P):
        nonlocal best_pts, best_def, n_acc
        ok = (norm(P) <= 1) & accept(P)
        n_acc += int(ok.sum())
        if ok.any():
            pts = np.concatenate([best_pts, P[ok]])
            dfs = np.concatenate([best_def, defect(P[ok])])
            keep = np.argsort(-dfs, kind="stable")[:elites]
            best_pts, best_def = pts[keep], dfs[keep]

    absorb(P)
    # refinement: elite * delta_r(u), so the central coordinate moves at scale r^2
    per_round = (samples - len(P)) // max(rounds, 1)
    for _ in range(rounds):
        if not len(best_pts) or per_round <= 0:
            break
        per_elite = per_round // len(best_pts) + 1
        absorb(np.concatenate([_local(c, per_elite, rng, prod, lo=1e-4 * scale, hi=scale)
                               for c in best_pts]))

    sup = float(best_def[0]) if len(best_def) else 0.0
    arg = tuple(float(c) for c in best_pts[0]) if len(best_pts) else None
    ratio = sup / eps if eps > 0 else 0.0
    return ScanReport(name, eps, samples, seed, n_acc, sup, ratio, arg)


def _check_eps(eps):
    if not 0 <= eps <= 0.2:
        raise ValueError(f"eps must lie in [0, 0.2], got {eps}")


UNIT_FAMILY = [tuple(p) for p in heis_family_points(1.0, 1.0)]


def midpoint_defect_scan(eps: float, samples: int = 100_000, seed: int = 0) -> ScanReport:
    """sup d3(id, p) over p in the unit ball that are eps-almost midpoints.

    p qualifies when d3(id,p) + d3(id,h_i) <= d3(p,h_i) + eps for each of the
    four points h_i of the a = b = 1 family.
    """
    _check_eps(eps)
    fam = UNIT_FAMILY

    def accept(P):
        n = _heis_norm(P)
        ok = np.ones(len(P), dtype=bool)
        for h in fam:
            ok &= n + 1 <= _heis_dist_to(P, h) + eps
        return ok

    return _sup_scan("midpoint", eps, samples, seed, False, accept, _heis_norm,
                     anchors=[(0.0, 0.0, 0.0)], scale=max(eps, 1e-6))


PROD_CONFIG = [(-1.0, 0.0, 0.0, 0.0)] + [(0.0,) + h for h in UNIT_FAMILY]


def abnormal_vertical_scan(eps: float, samples: int = 100_000, seed: int = 0) -> ScanReport:
    """sup of min(|v|, |v-1|, |v+1|) over g in the d_inf unit ball that are
    at distance >= 2 - eps from the five points of the a = b = 1 product
    family other than (1; 0,0,0)."""
    _check_eps(eps)

    def accept(P):
        ok = np.ones(len(P), dtype=bool)
        for q in PROD_CONFIG:
            ok &= _prod_dist_to(P, q) >= 2 - eps
        return ok

    def defect(P):
        v = P[:, 0]
        return np.minimum(np.abs(v), np.minimum(np.abs(v - 1), np.abs(v + 1)))

    anchors = [(1.0, 0.0, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0)] + PROD_CONFIG
    return _sup_scan("abnormal-vertical", eps, samples, seed, True, accept, defect,
                     anchors=anchors, scale=max(eps, 1e-6))


HEIS_CONTROL = UNIT_FAMILY[1:]
HEIS_MISSING = UNIT_FAMILY[0]


def heis_extreme_control_scan(eps: float, samples: int = 100_000, seed: int = 0) -> ScanReport:
    """Euclidean distance from (1,0,0) of points h in the d3 unit ball that
    are at distance >= 2 - eps from the other three a = b = 1 extreme points."""
    _check_eps(eps)

    def accept(P):
        ok = np.ones(len(P), dtype=bool)
        for q in HEIS_CONTROL:
            ok &= _heis_dist_to(P, q) >= 2 - eps
        return ok

    def defect(P):
        return np.linalg.norm(P - np.asarray(HEIS_MISSING), axis=1)

    return _sup_scan("heis-control", eps, samples, seed, False, accept, defect,
                     anchors=[HEIS_MISSING] + HEIS_CONTROL, scale=max(math.sqrt(eps), 1e-6))


def directional_midpoint_threshold(eps: float) -> float:
    """Largest zeta with p = (0,0,zeta) an eps-almost midpoint of the unit family.

    For p central, d3(p) = 4 sqrt(zeta) and d3(p^{-1} h_i) = 1 + 2 zeta, so the
    condition reads 4 sqrt(zeta) - 2 zeta <= eps.
    """
    if eps <= 0:
        return 0.0
    # s = sqrt(zeta): 2 s^2 - 4 s + eps = 0, smaller root
    s = (4 - math.sqrt(16 - 8 * eps)) / 4
    return s * s
