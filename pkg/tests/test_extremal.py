import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pansu_rate import extremal as ext
from pansu_rate.geometry import HeisPoint, ProdPoint, d3, dinf, dinf_between

half_to_one = st.floats(0.5, 1.0)


def test_unit_family():
    f = ext.extreme_family(1, 1)
    assert [tuple(p) for p in f.points] == [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    assert f.deviation == 0 and f.sphere_deviation == 0


def test_half_family():
    f = ext.extreme_family(0.5, 0.5)
    assert {tuple(p) for p in f.points} == {(0.5, 0.5, 0.125), (0.5, 0.5, -0.125),
                                            (-0.5, -0.5, 0.125), (-0.5, -0.5, -0.125)}
    assert all(d3(p) == 1 for p in f.points)
    assert ext.verify_mutual_distance(f) == 0


def test_mixed_family():
    assert ext.verify_mutual_distance(ext.extreme_family(0.75, 0.5)) < 1e-15


def test_product_family():
    f = ext.extreme_family(1, 1, "prod")
    assert len(f.points) == 6 and f.deviation == 0


def test_uncorrected_centre_leaves_the_ball():
    # central coordinate a(1-a) instead of a(1-a)/2
    assert d3((0.5, 0.5, 0.25)) > 1.4


def test_parameter_range():
    with pytest.raises(ValueError):
        ext.extreme_family(0.4, 1)
    with pytest.raises(ValueError):
        ext.extreme_family(1, 1.1)
    with pytest.raises(ValueError):
        ext.extreme_family(1, 1, "z3")


@settings(max_examples=200)
@given(half_to_one, half_to_one)
def test_families_are_extreme(a, b):
    for group in ("heis", "prod"):
        f = ext.extreme_family(a, b, group)
        assert f.deviation <= 1e-9 and f.sphere_deviation <= 1e-9


def test_vertical_pair_is_unique():
    f = ext.extreme_family(1, 1, "prod")
    rest = f.points[2:]
    rng = np.random.default_rng(0)
    # zero Heisenberg component: (v; 0) is at distance |v| + 1 from every (0; h_i)
    for v in rng.uniform(-1, 1, 2000):
        g = ProdPoint(v, HeisPoint(0, 0, 0))
        ok = all(abs(dinf_between(g, q) - 2) < 1e-6 for q in rest)
        assert ok == (abs(abs(v) - 1) < 1e-6)
    for q in (ProdPoint(1.0, HeisPoint(0, 0, 0)), ProdPoint(-1.0, HeisPoint(0, 0, 0))):
        assert all(dinf_between(q, r) == 2 for r in rest)


def test_scans_at_zero():
    assert ext.midpoint_defect_scan(0, 2000, 0).sup_defect == 0
    assert ext.abnormal_vertical_scan(0, 2000, 0).sup_defect == 0


def test_scan_validation():
    with pytest.raises(ValueError):
        ext.midpoint_defect_scan(0.5, 100, 0)


def test_midpoint_ratio_stable():
    a = ext.midpoint_defect_scan(0.1, 30_000, 2)
    b = ext.midpoint_defect_scan(0.05, 30_000, 2)
    assert 0.5 <= a.ratio / b.ratio <= 2


def test_central_direction_threshold():
    for eps in (0.1, 0.05):
        z = ext.directional_midpoint_threshold(eps)
        p = np.array([[0, 0, z * (1 - 1e-9)], [0, 0, z * (1 + 1e-6)]])
        norm = ext._heis_norm(p)
        ok = [all(norm[i] + 1 <= ext._heis_dist_to(p[i:i + 1], h)[0] + eps for h in ext.UNIT_FAMILY)
              for i in range(2)]
        assert ok == [True, False]
        # the accepted central point sits far below the scanned supremum
        assert 4 * np.sqrt(z) <= ext.midpoint_defect_scan(eps, 20_000, 0).sup_defect + 1e-9


def test_scans_are_deterministic():
    a = ext.abnormal_vertical_scan(0.05, 10_000, 7)
    assert a == ext.abnormal_vertical_scan(0.05, 10_000, 7)
    assert json.loads(json.dumps(a.to_dict()))["seed"] == 7


def test_accepted_points_satisfy_constraints():
    r = ext.abnormal_vertical_scan(0.05, 20_000, 1)
    g = ProdPoint(r.argmax[0], HeisPoint(*r.argmax[1:]))
    assert dinf(g) <= 1
    assert all(dinf_between(g, ProdPoint(q[0], HeisPoint(*q[1:]))) >= 2 - 0.05 for q in ext.PROD_CONFIG)
