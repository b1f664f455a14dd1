"""SVG and OBJ pictures of limit unit balls and geodesics."""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import geometry as geo

AXES = {"d3": ("x", "y", "z"), "dinf": ("v", "x", "y", "z")}

# which two coordinates a coordinate-plane section displays; all others are zero
SECTION_AXES = {
    "d3": {"z=0": ("x", "y"), "y=0": ("x", "z"), "x=0": ("y", "z")},
    "dinf": {"y=0": ("v", "z"), "x=0": ("v", "z"), "z=0": ("v", "x"), "v=0": ("x", "z")},
}
_WEIGHT = {"v": 1, "x": 1, "y": 1, "z": 2}  # dilation degree


@dataclass(frozen=True)
class RenderSpec:
    metric: str = "d3"
    mode: str = "section"
    plane: str = "y=0"
    resolution: int = 256
    out: Optional[str] = None
    point: Optional[tuple] = None  # geodesic target

    def __post_init__(self):
        if self.metric not in AXES:
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.mode not in ("section", "mesh", "geodesic"):
            raise ValueError(f"unknown render mode {self.mode!r}")
        if self.resolution < 64:
            raise ValueError("resolution must be at least 64")
        if self.mode == "section" and self.plane not in SECTION_AXES[self.metric]:
            raise ValueError(f"plane {self.plane!r} is not available for {self.metric}; "
                             f"choose from {sorted(SECTION_AXES[self.metric])}")
        if self.mode == "mesh" and self.metric != "d3":
            raise ValueError("mesh mode draws the d3 unit sphere only")
        if self.mode == "geodesic" and (self.point is None or len(self.point) != 3):
            raise ValueError("geodesic mode needs a target point x,y,z")


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _distance(metric: str, coords: dict) -> float:
    if metric == "d3":
        return geo.d3((coords["x"], coords["y"], coords["z"]))
    return geo.dinf(geo.ProdPoint(coords["v"], geo.HeisPoint(coords["x"], coords["y"], coords["z"])))


def _dilated(axes, u, r) -> dict:
    return {a: c * r ** _WEIGHT[a] for a, c in zip(axes, u)}


def unit_radius(metric: str, axes, u, tol: float = 1e-9) -> float:
    """Dilation factor r with d(delta_r u) = 1, found by bisection.

    d(delta_r u) = r d(u) is increasing in r, so the bracket is safe.
    """
    full = dict.fromkeys(AXES[metric], 0.0)

    def f(r):
        full.update(_dilated(axes, u, r))
        return _distance(metric, full) - 1

    lo, hi = 0.0, 1.0
    while f(hi) < 0:
        hi *= 2
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def section_points(spec: RenderSpec) -> list:
    axes = SECTION_AXES[spec.metric][spec.plane]
    pts = []
    for k in range(spec.resolution):
        t = 2 * math.pi * k / spec.resolution
        # exact zeros on the axes matter: the 4 sqrt|z| cusp amplifies 1e-16 to 4e-8
        u = tuple(0.0 if abs(c) < 1e-12 else c for c in (math.cos(t), math.sin(t)))
        r = unit_radius(spec.metric, axes, u)
        d = _dilated(axes, u, r)
        pts.append((d[axes[0]], d[axes[1]]))
    return pts


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _svg(polylines, labels, closed: bool, title: str) -> str:
    xs = [p[0] for line in polylines for p in line] or [0.0]
    ys = [p[1] for line in polylines for p in line] or [0.0]
    pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    w = x1 - x0
    stroke = _fmt(w / 300)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(y1 - y0)}">',
        f"<title>{title}</title>",
        f'<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{stroke}">',
    ]
    tag = "polygon" if closed else "polyline"
    for line in polylines:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in line)
        out.append(f'<{tag} points="{coords}"/>')
    out.append("</g>")
    for text in labels:
        out.append(f"<desc>{text}</desc>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def section_svg(spec: RenderSpec) -> str:
    axes = SECTION_AXES[spec.metric][spec.plane]
    return _svg([section_points(spec)], [f"axes {axes[0]},{axes[1]}"], True,
                f"{spec.metric} unit ball, section {spec.plane}")


def sphere_mesh(resolution: int) -> tuple:
    """Vertices and triangles of the d3 unit sphere over a latitude/longitude grid."""
    n_lat = max(resolution // 2, 8)
    n_lon = resolution
    verts = [(0.0, 0.0, geo.dilate(1 / geo.d3((0, 0, 1)), geo.HeisPoint(0, 0, 1)).z)]
    for i in range(1, n_lat):
        phi = math.pi * i / n_lat
        for j in range(n_lon):
            th = 2 * math.pi * j / n_lon
            u = geo.HeisPoint(math.sin(phi) * math.cos(th), math.sin(phi) * math.sin(th), math.cos(phi))
            verts.append(tuple(geo.dilate(1 / geo.d3(u), u)))
    verts.append((0.0, 0.0, -verts[0][2]))
    south = len(verts) - 1

    def idx(i, j):  # ring i in 1..n_lat-1
        return 1 + (i - 1) * n_lon + (j % n_lon)

    tris = []
    for j in range(n_lon):
        tris.append((0, idx(1, j), idx(1, j + 1)))
    for i in range(1, n_lat - 1):
        for j in range(n_lon):
            a, b = idx(i, j), idx(i, j + 1)
            c, d = idx(i + 1, j), idx(i + 1, j + 1)
            tris += [(a, c, d), (a, d, b)]
    for j in range(n_lon):
        tris.append((idx(n_lat - 1, j), south, idx(n_lat - 1, j + 1)))
    return np.array(verts), np.array(tris, dtype=np.int64)


def mesh_obj(spec: RenderSpec) -> str:
    verts, tris = sphere_mesh(spec.resolution)
    lines = ["# d3 unit sphere"]
    lines += [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in verts]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in tris]
    return "\n".join(lines) + "\n"


def geodesic_svg(spec: RenderSpec) -> str:
    plan = geo.synthesize_geodesic(geo.HeisPoint(*spec.point))
    segs = ", ".join(str(s) for s in plan.segments)
    return _svg([plan.vertices()], [f"{plan.kind.value}: {segs}; length {plan.length:.12g}"],
                False, f"geodesic to {tuple(spec.point)}")


def render(spec: RenderSpec) -> str:
    """Render to text; writes ``spec.out`` atomically when it is set."""
    text = {"section": section_svg, "mesh": mesh_obj, "geodesic": geodesic_svg}[spec.mode](spec)
    if spec.out:
        write_atomic(spec.out, text)
    return text
