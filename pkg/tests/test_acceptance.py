"""Acceptance criteria 1-9, one test each.

Each test prints a single ``criterion N: PASS|FAIL ...`` line; the lines are
also collected into the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import math
import time
from functools import lru_cache

import numpy as np

from pansu_rate import asymptotics as asy
from pansu_rate import extremal as ext
from pansu_rate import geometry as geo
from pansu_rate.lattice import BUILTIN_LABELS, builtin_genset, enumerate_ball, word_distance

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


@lru_cache(maxsize=None)
def heis_census(radius: int, store: bool = False):
    return enumerate_ball(builtin_genset("HEIS_STD"), radius, store=store)


def test_criterion_1_oracle_agreement():
    census = heis_census(30, store=True)
    s = builtin_genset("HEIS_STD")
    per_sphere = []
    for n, layer in enumerate(census.layers):
        d = asy.limit_distance_array(s, layer)
        per_sphere.append(float(np.max(np.abs(n - d))))
    c0 = max(per_sphere)
    low, high = max(per_sphere[1:16]), max(per_sphere[15:31])
    report(1, high - low < 1,
           f"C0={c0:.4f} max[1,15]={low:.4f} max[15,30]={high:.4f} over {census.ball(30)} elements")


def test_criterion_2_volume_law():
    census = heis_census(60)
    vol = asy.unit_ball_volume("d3")
    fit = asy.fit_volume(census, 4, (20, 60), label="HEIS_STD")
    rel = abs(fit.c_hat - vol) / vol
    spread = fit.max_abs_residual() / fit.median_abs_residual()
    report(2, rel <= 0.10 and spread <= 2,
           f"c_hat={fit.c_hat:.5f} vol={vol:.5f} rel={rel:.4f} max/median |r_n|={spread:.3f}")


def test_criterion_3_sphere_sandwich():
    census = heis_census(60)
    ratios = [census.sphere(n) / n ** 3 for n in range(10, 61)]
    c1, c2 = min(ratios), max(ratios)
    radii = {"HEIS_STD": 60, "PROD_S1": 24, "PROD_S2": 30, "Z3_STD": 60}
    failures = []
    for label in BUILTIN_LABELS:
        c = census if label == "HEIS_STD" else enumerate_ball(builtin_genset(label), radii[label])
        failures += [(label, n) for n in range(1, c.radius + 1) if c.ball(n) > 2 * n * c.sphere(n)]
    report(3, c2 / c1 <= 4 and not failures,
           f"|S(n)|/n^3 in [{c1:.4f}, {c2:.4f}] ratio {c2 / c1:.3f}; "
           f"|B|<=2n|S| violations: {len(failures)}")


def test_criterion_4_sqrt_gap():
    rows = asy.sqrt_gap_experiment([16, 25, 36, 64, 100])
    band = all(3 <= r.ratio <= 5 for r in rows)
    s1 = builtin_genset("PROD_S1")
    exact = all(word_distance(s1, asy.gamma_n(n), budget=n) == n for n in range(1, 13))
    report(4, band and exact,
           "g_n/sqrt(n): " + ", ".join(f"{r.n}:{r.ratio:.3f}" for r in rows)
           + f"; rho_1(gamma_n)=n for n<=12: {exact}")


def test_criterion_5_gh_rates():
    s1 = builtin_genset("PROD_S1")
    ns = [25, 50, 100, 200, 400]
    gaps = [asy.gh_distortion(s1, n, samples=0).witnesses[0].gap for n in ns]
    slope1 = asy.fit_rate(list(zip(ns, gaps))).slope
    scaled = [g * math.sqrt(n) for n, g in zip(ns, gaps)]
    ok1 = -0.65 <= slope1 <= -0.35 and all(3.5 <= v <= 4.5 for v in scaled)

    heis = builtin_genset("HEIS_STD")
    hs = [8, 16, 32, 64]
    census = heis_census(64, store=True)
    dn = [asy.gh_distortion(heis, n, samples=2000, seed=0, census=census).distortion for n in hs]
    slope_h = asy.fit_rate(list(zip(hs, dn))).slope
    report(5, ok1 and slope_h <= -0.8,
           f"PROD_S1 slope={slope1:.4f} gap*sqrt(n) in [{min(scaled):.4f}, {max(scaled):.4f}]; "
           f"HEIS D_n=" + ",".join(f"{d:.4f}" for d in dn) + f" slope={slope_h:.4f}")


def test_criterion_6_abnormal_rigidity():
    eps = [0.1, 0.05, 0.025]
    prod = [ext.abnormal_vertical_scan(e, 100_000, seed=0) for e in eps]
    ctrl = [ext.heis_extreme_control_scan(e, 100_000, seed=0) for e in eps]
    sp = asy.fit_rate([(e, r.sup_defect) for e, r in zip(eps, prod)]).slope
    sc = asy.fit_rate([(e, r.sup_defect) for e, r in zip(eps, ctrl)]).slope
    report(6, 0.8 <= sp <= 1.2 and 0.3 <= sc <= 0.7,
           f"product slope={sp:.4f} ratios=" + ",".join(f"{r.ratio:.3f}" for r in prod)
           + f"; control slope={sc:.4f}")


def test_criterion_7_extreme_families():
    grid = np.round(np.arange(0.5, 1.0001, 0.05), 10)
    worst = 0.0
    for a in grid:
        for b in grid:
            for group in ("heis", "prod"):
                f = ext.extreme_family(float(a), float(b), group)
                worst = max(worst, f.deviation, f.sphere_deviation)
    report(7, worst <= 1e-9, f"max deviation {worst:.2e} over {len(grid) ** 2} (a, b) pairs x 2 groups")


def _random_points(rng, n, scale=5.0):
    return rng.uniform(-scale, scale, (n, 3))


def test_criterion_8_geometry_suite():
    rng = np.random.default_rng(2024)
    n = 100_000
    p, q = _random_points(rng, n), _random_points(rng, n)
    pq = np.column_stack([p[:, 0] + q[:, 0], p[:, 1] + q[:, 1],
                          p[:, 2] + q[:, 2] + 0.5 * (p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0])])
    dp, dq, dpq = (geo.d3_array(*m.T) for m in (p, q, pq))
    triangle = bool(np.all(dpq <= dp + dq + 1e-9))

    t = rng.uniform(1e-3, 10, n)
    dil = geo.d3_array(t * p[:, 0], t * p[:, 1], t * t * p[:, 2])
    homog = float(np.max(np.abs(dil - t * dp) / np.maximum(1, t * dp)))

    ax, ay = np.abs(p[:, 0]), np.abs(p[:, 1])
    m, half = np.maximum(ax, ay), ax * ay / 2
    z1 = half
    z2 = m * m - half
    c1 = np.abs((ax + ay) - (m + 2 * z1 / m))
    c2 = np.abs((m + 2 * z2 / m) - (4 * np.sqrt(z2 + half) - ax - ay))
    boundary = float(max(c1.max(), c2.max()))

    worst_geo = 0.0
    for row in _random_points(rng, n, 3.0):
        plan = geo.synthesize_geodesic(geo.HeisPoint(*row))
        end = plan.endpoint()
        err = max(max(abs(a - b) for a, b in zip(end, row)), abs(plan.length - geo.d3(row)))
        worst_geo = max(worst_geo, err)

    rows = geo.gronwall_experiment([0.1, 0.05, 0.025, 0.0125], pairs=200, seed=0)
    halving = [a.max_gap / b.max_gap for a, b in zip(rows, rows[1:])]
    gron = all(2 / 1.5 <= h <= 2 * 1.5 for h in halving)

    ok = triangle and homog <= 1e-12 and boundary <= 1e-12 and worst_geo <= 1e-9 and gron
    report(8, ok, f"triangle={triangle} homogeneity={homog:.1e} boundary={boundary:.1e} "
                  f"geodesic={worst_geo:.1e} gronwall halving=" + ",".join(f"{h:.3f}" for h in halving))


def test_criterion_9_norm_cone_identity():
    s1, s2 = builtin_genset("PROD_S1"), builtin_genset("PROD_S2")
    same = asy.pansu_norm(s1).vertices == asy.pansu_norm(s2).vertices
    rows = asy.ratio_convergence(s1, s2, [8, 16, 32], samples=200, seed=0)
    dev = {r.n: r.deviation for r in rows}
    report(9, same and dev[32] < dev[8],
           f"identical vertex sets: {same}; deviation " + ", ".join(f"R={k}:{v:.4f}" for k, v in dev.items()))


if __name__ == "__main__":
    start = time.time()
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print(f"{9 - failed}/9 criteria passed in {time.time() - start:.1f}s")
