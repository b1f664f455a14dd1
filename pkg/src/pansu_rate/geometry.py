"""Continuous geometry of H3(R) and R x H3(R) with the l1 subFinsler metric.

Points are stored in exponential coordinates, so the group law carries the
BCH half-commutator:

    (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + (x y' - y x') / 2)

The lattice code works in matrix coordinates; ``coords_convert`` bridges the
two.  Every scalar function here has an array twin (suffix ``_array``) used
by the enumeration and sampling experiments.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np


class HeisPoint(NamedTuple):
    x: float
    y: float
    z: float


class ProdPoint(NamedTuple):
    v: float
    h: HeisPoint


ORIGIN = HeisPoint(0.0, 0.0, 0.0)
PROD_ORIGIN = ProdPoint(0.0, ORIGIN)


def heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    return HeisPoint(
        p[0] + q[0],
        p[1] + q[1],
        p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0]),
    )


def heis_inv(p: HeisPoint) -> HeisPoint:
    return HeisPoint(-p[0], -p[1], -p[2])


def prod_mul(p: ProdPoint, q: ProdPoint) -> ProdPoint:
    return ProdPoint(p.v + q.v, heis_mul(p.h, q.h))


def prod_inv(p: ProdPoint) -> ProdPoint:
    return ProdPoint(-p.v, heis_inv(p.h))


def coords_convert(p: Sequence[float], direction: str = "matrix->exp") -> tuple:
    """Shear between matrix (second-kind) and exponential coordinates.

    ``z_exp = z_matrix - x*y/2``.  Both maps have unit Jacobian.
    """
    x, y, z = p
    if direction in ("matrix->exp", "m2e"):
        return (x, y, z - x * y / 2)
    if direction in ("exp->matrix", "e2m"):
        return (x, y, z + x * y / 2)
    raise ValueError(f"unknown direction {direction!r}")


def matrix_to_exp_array(x, y, z):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return x, y, np.asarray(z, dtype=np.float64) - 0.5 * x * y


# --------------------------------------------------------------------------
# the distance formula

def d3(p: Sequence[float]) -> float:
    """Distance from the identity to ``p`` for the l1 subFinsler metric on H3(R)."""
    ax, ay, az = abs(p[0]), abs(p[1]), abs(p[2])
    m = max(ax, ay)
    half = ax * ay / 2
    if az <= half:
        return ax + ay
    if az <= m * m - half:
        # m > 0 here: m == 0 forces half == 0 and az > 0, i.e. case (iii)
        return m + 2 * az / m
    return 4 * math.sqrt(az + half) - ax - ay


def d3_array(x, y, z) -> np.ndarray:
    ax = np.abs(np.asarray(x, dtype=np.float64))
    ay = np.abs(np.asarray(y, dtype=np.float64))
    az = np.abs(np.asarray(z, dtype=np.float64))
    m = np.maximum(ax, ay)
    half = ax * ay / 2
    staircase = az <= half
    three = ~staircase & (az <= m * m - half)
    safe_m = np.where(m > 0, m, 1.0)
    return np.where(
        staircase,
        ax + ay,
        np.where(three, m + 2 * az / safe_m, 4 * np.sqrt(az + half) - ax - ay),
    )


def d3_between(p: HeisPoint, q: HeisPoint) -> float:
    return d3(heis_mul(heis_inv(p), q))


def dinf(p: ProdPoint) -> float:
    return abs(p.v) + d3(p.h)


def dinf_between(p: ProdPoint, q: ProdPoint) -> float:
    return dinf(prod_mul(prod_inv(p), q))


def dinf_array(v, x, y, z) -> np.ndarray:
    return np.abs(np.asarray(v, dtype=np.float64)) + d3_array(x, y, z)


def dilate(t: float, p):
    """Graded dilation: degree-one coordinates scale by t, the center by t**2."""
    if not t > 0:
        raise ValueError(f"dilation factor must be positive, got {t}")
    if isinstance(p, ProdPoint):
        return ProdPoint(t * p.v, dilate(t, p.h))
    x, y, z = p
    return HeisPoint(t * x, t * y, t * t * z)


# --------------------------------------------------------------------------
# geodesics

class GeodesicKind(enum.Enum):
    STAIRCASE = "staircase"
    THREE_SIDED = "three-sided"
    FOUR_SIDED = "four-sided"


EAST, WEST, NORTH, SOUTH = (1, 0), (-1, 0), (0, 1), (0, -1)
_DIRECTION_NAMES = {EAST: "east", WEST: "west", NORTH: "north", SOUTH: "south"}


class Segment(NamedTuple):
    direction: tuple
    length: float

    def __str__(self):
        return f"{_DIRECTION_NAMES[self.direction]} {self.length:g}"


@dataclass(frozen=True)
class GeodesicPlan:
    kind: GeodesicKind
    segments: tuple
    target: HeisPoint
    length: float

    def endpoint(self) -> HeisPoint:
        return develop_segments(self.segments)

    def vertices(self) -> list:
        """Planar polyline of the projected path, starting at the origin."""
        pts = [(0.0, 0.0)]
        for (dx, dy), ell in self.segments:
            x, y = pts[-1]
            pts.append((x + dx * ell, y + dy * ell))
        return pts


def _region(ax: float, ay: float, az: float) -> GeodesicKind:
    m = max(ax, ay)
    half = ax * ay / 2
    if az <= half:
        return GeodesicKind.STAIRCASE
    if az <= m * m - half:
        return GeodesicKind.THREE_SIDED
    return GeodesicKind.FOUR_SIDED


def classify_geodesic(p: HeisPoint) -> GeodesicKind:
    if p[0] == 0 and p[1] == 0 and p[2] == 0:
        raise ValueError("the identity has no geodesic type")
    return _region(abs(p[0]), abs(p[1]), abs(p[2]))


def develop_segments(segments) -> HeisPoint:
    """Horizontal lift of an axis-parallel planar path starting at the identity."""
    pt = ORIGIN
    for (dx, dy), ell in segments:
        pt = heis_mul(pt, HeisPoint(dx * ell, dy * ell, 0.0))
    return pt


def _canonical_segments(X: float, Y: float, Z: float, kind: GeodesicKind) -> list:
    """Segments for a target with X, Y >= 0 and Z >= 0 (cases ii, iii) or any Z (case i)."""
    if kind is GeodesicKind.STAIRCASE:
        if Y == 0:
            return [(EAST, X)]
        a = X / 2 + Z / Y
        return [(EAST, a), (NORTH, Y), (EAST, X - a)]
    if kind is GeodesicKind.THREE_SIDED:
        half = X * Y / 2
        if X >= Y:
            h = (Z - half) / X
            return [(SOUTH, h), (EAST, X), (NORTH, Y + h)]
        h = (Z - half) / Y
        return [(EAST, X + h), (NORTH, Y), (WEST, h)]
    s = math.sqrt(Z + X * Y / 2)
    if X == 0 and Y == 0:
        return [(EAST, s), (NORTH, s), (WEST, s), (SOUTH, s)]
    # square [0, s] x [Y - s, Y], entered on its left side, left on its top side
    return [(SOUTH, s - Y), (EAST, s), (NORTH, s), (WEST, s - X)]


def synthesize_geodesic(p: HeisPoint) -> GeodesicPlan:
    """One canonical d3-geodesic from the identity to ``p``.

    The target is reduced to x, y >= 0 by the reflections x -> -x and
    y -> -y (each flips z); for the two square-arc types a negative z is
    handled by the swap (x, y, z) -> (y, x, -z).  Zero-length segments are
    dropped.
    """
    p = HeisPoint(*map(float, p))
    kind = classify_geodesic(p)
    sx = -1.0 if p.x < 0 else 1.0
    sy = -1.0 if p.y < 0 else 1.0
    X, Y, Z = abs(p.x), abs(p.y), p.z * sx * sy

    swap = kind is not GeodesicKind.STAIRCASE and Z < 0
    if swap:
        X, Y, Z = Y, X, -Z
    raw = _canonical_segments(X, Y, Z, kind)

    tol = 1e-12 * max(1.0, X + Y + math.sqrt(abs(Z)))
    segments = []
    for (dx, dy), ell in raw:
        if ell < -tol:
            raise RuntimeError(f"negative leg {ell} while building {kind} geodesic to {p}")
        if ell <= tol:
            continue
        if swap:
            dx, dy = dy, dx
        segments.append(Segment((int(dx * sx), int(dy * sy)), ell))
    # merge consecutive legs in the same direction
    merged: list = []
    for seg in segments:
        if merged and merged[-1].direction == seg.direction:
            merged[-1] = Segment(seg.direction, merged[-1].length + seg.length)
        else:
            merged.append(seg)
    return GeodesicPlan(kind, tuple(merged), p, sum(s.length for s in merged))


# --------------------------------------------------------------------------
# horizontal controls

class ControlPiece(NamedTuple):
    u_v: float
    u_x: float
    u_y: float
    duration: float


@dataclass(frozen=True)
class HorizontalControl:
    """Piecewise constant horizontal velocity in the frame (R-factor, X, Y)."""

    pieces: tuple = ()

    def __post_init__(self):
        pieces = tuple(ControlPiece(*map(float, p)) for p in self.pieces)
        for p in pieces:
            if not p.duration > 0 or not all(map(math.isfinite, p)):
                raise ValueError(f"invalid control piece {p}")
        object.__setattr__(self, "pieces", pieces)

    @property
    def horizon(self) -> float:
        return math.fsum(p.duration for p in self.pieces)

    def speed(self) -> float:
        return max((abs(p.u_v) + abs(p.u_x) + abs(p.u_y) for p in self.pieces), default=0.0)


def develop_path(c: HorizontalControl) -> tuple:
    """Endpoint of the path driven by ``c`` and its length under |u_v|+|u_x|+|u_y|."""
    pt = PROD_ORIGIN
    length = 0.0
    for u_v, u_x, u_y, tau in c.pieces:
        pt = prod_mul(pt, ProdPoint(tau * u_v, HeisPoint(tau * u_x, tau * u_y, 0.0)))
        length += tau * (abs(u_v) + abs(u_x) + abs(u_y))
    return pt, length


def _as_array(p: ProdPoint) -> np.ndarray:
    return np.array([p.v, p.h.x, p.h.y, p.h.z])


def gronwall_gap(c1: HorizontalControl, c2: HorizontalControl, tol: float = 1e-12) -> tuple:
    """(L2 norm of the control difference, Euclidean distance of the endpoints)."""
    if abs(c1.horizon - c2.horizon) > tol * max(1.0, c1.horizon):
        raise ValueError(f"time horizons differ: {c1.horizon} vs {c2.horizon}")
    cuts = sorted(set(np.cumsum([0.0] + [p.duration for p in c1.pieces]))
                  | set(np.cumsum([0.0] + [p.duration for p in c2.pieces])))
    cuts[-1] = min(c1.horizon, c2.horizon)

    def value_at(c, t):
        acc = 0.0
        for p in c.pieces:
            acc += p.duration
            if t < acc:
                return np.array(p[:3])
        return np.array(c.pieces[-1][:3]) if c.pieces else np.zeros(3)

    sq = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 0:
            continue
        mid = 0.5 * (a + b)
        diff = value_at(c1, mid) - value_at(c2, mid)
        sq += (b - a) * float(diff @ diff)
    e1, _ = develop_path(c1)
    e2, _ = develop_path(c2)
    return math.sqrt(sq), float(np.linalg.norm(_as_array(e1) - _as_array(e2)))


@dataclass(frozen=True)
class GronwallRow:
    eps: float
    max_gap: float
    constant: float  # max gap / eps


def random_control(rng: np.random.Generator, pieces: int = 8, speed: float = 1.5) -> np.ndarray:
    """Velocities (pieces x 3) on [0, 1] with |u_v| + |u_x| + |u_y| <= speed."""
    u = rng.uniform(-1, 1, (pieces, 3))
    return u * (speed * rng.uniform(0, 1, (pieces, 1)) / np.abs(u).sum(axis=1, keepdims=True))


def _control(u: np.ndarray) -> HorizontalControl:
    tau = 1.0 / len(u)
    return HorizontalControl(tuple((a, b, c, tau) for a, b, c in u))


def gronwall_experiment(eps_values, pairs: int = 200, seed: int = 0, pieces: int = 8) -> list:
    """Largest endpoint gap over perturbed control pairs, per perturbation size.

    Base controls have speed <= 1.5 and each perturbation direction has unit
    L2 norm, so the control difference has L2 norm exactly eps.  The same
    bases and directions are reused for every eps; pairs whose speed would
    exceed 2 are rejected.
    """
    rng = np.random.default_rng(seed)
    bases = [random_control(rng, pieces) for _ in range(pairs)]
    dirs = []
    for _ in range(pairs):
        d = rng.normal(size=(pieces, 3))
        dirs.append(d / math.sqrt(float((d * d).sum()) / pieces))
    rows = []
    for eps in eps_values:
        if not eps > 0:
            raise ValueError(f"eps must be positive, got {eps}")
        worst = 0.0
        for u, d in zip(bases, dirs):
            c1, c2 = _control(u), _control(u + eps * d)
            if c2.speed() > 2:
                raise ValueError(f"eps={eps} pushes the control speed above 2")
            _, gap = gronwall_gap(c1, c2)
            worst = max(worst, gap)
        rows.append(GronwallRow(float(eps), worst, worst / eps))
    return rows
