import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pansu_rate import asymptotics as asy
from pansu_rate.lattice import Group, LatticeElement, builtin_genset, enumerate_ball

P = LatticeElement.prod
vec3 = st.tuples(*[st.floats(-5, 5, allow_nan=False)] * 3)


def test_pansu_norm_examples(heis, s1, s2):
    n = asy.pansu_norm(heis)
    assert set(n.vertices) == {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}
    assert n.gauge((1, 1)) == pytest.approx(2)
    assert asy.pansu_norm(s1).gauge((1, 1, 1)) == pytest.approx(3)
    assert asy.pansu_norm(s1).vertices == asy.pansu_norm(s2).vertices


@given(vec3, vec3, st.floats(0, 10))
def test_gauge_is_a_norm(u, w, t):
    n = asy.pansu_norm(builtin_genset("PROD_S1"))
    assert n.gauge(np.multiply(t, u)) == pytest.approx(t * n.gauge(u), rel=1e-12, abs=1e-12)
    assert n.gauge(np.add(u, w)) <= n.gauge(u) + n.gauge(w) + 1e-12


def test_generators_have_gauge_at_most_one(s1):
    n = asy.pansu_norm(s1)
    g = n.gauge_array(asy.abelian_projection(s1.group, s1.as_array()))
    assert (g <= 1 + 1e-12).all()
    assert all(n.gauge(v) == pytest.approx(1) for v in n.vertices)


def test_degenerate_projection_rejected():
    from pansu_rate.lattice import GenSet
    flat = GenSet(Group.HEIS, (LatticeElement.heis(1, 0, 0), LatticeElement.heis(-1, 0, 0)), "flat")
    with pytest.raises(ValueError):
        asy.pansu_norm(flat)


def test_homogeneous_dimension():
    assert [asy.homogeneous_dimension(g) for g in (Group.HEIS, Group.PROD, Group.Z3)] == [4, 5, 3]


def test_z_max():
    assert asy.z_max(0, 0) == pytest.approx(1 / 16)
    for x in np.linspace(-1, 1, 9):
        y = 1 - abs(x)
        assert asy.z_max(x, y) == pytest.approx(abs(x * y) / 2, abs=1e-12)


def test_unit_ball_volume_against_monte_carlo():
    exact = asy.unit_ball_volume("d3")
    assert exact == pytest.approx(31 / 72, rel=1e-9)
    # standard error is about 2.5e-4 at this sample size
    mc = asy.monte_carlo_ball_volume(4_000_000, seed=1)
    assert mc == pytest.approx(exact, rel=2e-3)
    # the v-coordinate convolution: integral of (1-|v|)^4 over [-1,1]
    assert asy.unit_ball_volume("dinf") == pytest.approx(0.4 * exact, rel=1e-8)


def test_fit_rate_examples():
    ns = [8, 16, 32, 64]
    assert asy.fit_rate([(n, 3 / n) for n in ns]).slope == pytest.approx(-1, abs=1e-9)
    assert asy.fit_rate([(n, 5 * n ** -0.5) for n in ns]).slope == pytest.approx(-0.5, abs=1e-9)
    with pytest.raises(ValueError):
        asy.fit_rate([(1, 1), (2, 0), (3, 1)])
    with pytest.raises(ValueError):
        asy.fit_rate([(1, 1), (2, 1)])


def test_fit_volume_synthetic():
    balls = [7 * n ** 4 for n in range(41)]
    f = asy.fit_volume(balls, 4, (20, 40))
    assert f.c_hat == pytest.approx(7) and max(abs(r) for _, r in f.residuals) < 1e-6
    f = asy.fit_volume([7 * n ** 4 + n ** 3 for n in range(41)], 4, (20, 40))
    assert all(r == pytest.approx(1, abs=1e-6) for _, r in f.residuals)
    with pytest.raises(ValueError):
        asy.fit_volume(balls, 4, (20, 50))


def test_heis_witness_gap_zero(heis):
    rep = asy.gh_distortion(heis, 10, samples=300, seed=0)
    assert rep.witnesses[0].gap == pytest.approx(0, abs=1e-12)
    assert rep.distortion >= max(w.gap for w in rep.witnesses)


def test_prod_witness_examples(s1):
    rep = asy.gh_distortion(s1, 100, samples=0)
    assert rep.witnesses[0].rho == 100 and rep.witnesses[0].gap == pytest.approx(0.4)
    rec = rep.recorded[0]
    target = 4 * math.sqrt(2 / 100)
    assert rec.limit == pytest.approx(target) and rec.scaled_word == pytest.approx(target, rel=0.05)


def test_distortion_decreases(heis):
    def med(n):
        return np.median([asy.gh_distortion(heis, n, samples=300, seed=k).distortion for k in range(3)])
    assert med(16) < med(4)


def test_sqrt_gap_examples():
    rows = asy.sqrt_gap_experiment([1, 4])
    assert (rows[0].n, rows[0].g) == (1, 4)
    assert (rows[1].n, rows[1].g, rows[1].ratio) == (4, 8, 4.0)
    assert all(r.rho1_minus_n == 0 for r in rows)


def test_central_oracle_matches_bfs(s1, s2):
    oracle = asy.HeisOracle(builtin_genset("HEIS_STD"), table_radius=6)
    for s in (s1, s2):
        census = enumerate_ball(s, 7, store=True)
        fast = asy.CentralProductDistance(s, oracle)
        for n, layer in enumerate(census.layers):
            assert (fast.lengths(layer) == n).all()


def test_ratio_convergence_same_set(s2):
    rows = asy.ratio_convergence(s2, s2, [4, 8], samples=50)
    assert all(r.deviation == 0 for r in rows)


def test_ratio_at_gamma_n(s1, s2):
    oracle = asy.HeisOracle(builtin_genset("HEIS_STD"), table_radius=32)
    a, b = asy.CentralProductDistance(s1, oracle), asy.CentralProductDistance(s2, oracle)
    g = asy.gamma_n(16)
    assert a.length(g) == 16 and b.length(g) == 16 + 16
    assert abs(a.length(g) / b.length(g) - 1) == pytest.approx(4 / (4 + 4))


def test_report_schema():
    rep = asy.report("x", "HEIS_STD", 3, [asy.GapRow(4, 8, 4.0, 0)],
                     asy.fit_rate([(1, 1), (2, 0.5), (4, 0.25)]))
    assert set(rep) == {"experiment", "genset", "seed", "rows", "fit"}
    assert set(rep["fit"]) == {"slope", "intercept"}
    assert asy.report_csv(rep).splitlines()[1] == "4,8,4.0,0"
