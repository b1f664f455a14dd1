import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pansu_rate.lattice import (
    BudgetExceeded,
    Group,
    KeyCodec,
    LatticeElement,
    builtin_genset,
    enumerate_ball,
    lat_inv,
    lat_mul,
    load_genset,
    sample_ball,
    split_word_distance,
    word_distance,
    word_distances,
)

H = LatticeElement.heis
P = LatticeElement.prod
small = st.integers(-50, 50)
heis_el = st.builds(H, small, small, small)


def test_lat_mul_examples():
    a, b = H(1, 0, 0), H(0, 1, 0)
    assert lat_mul(a, b) == H(1, 1, 1)
    assert lat_mul(b, a) == H(1, 1, 0)
    assert lat_mul(lat_mul(a, b), lat_mul(lat_inv(a), lat_inv(b))) == H(0, 0, 1)
    with pytest.raises(ValueError):
        lat_mul(a, P(1, 0, 0, 0))


def test_overflow_is_an_error():
    big = H(2**62, 2**62, 0)
    with pytest.raises(OverflowError):
        lat_mul(big, big)


@given(heis_el, heis_el, heis_el)
def test_group_axioms(p, q, r):
    assert lat_mul(lat_mul(p, q), r) == lat_mul(p, lat_mul(q, r))
    assert lat_mul(p, lat_inv(p)) == H(0, 0, 0) == lat_mul(lat_inv(p), p)


def test_builtin_sizes():
    assert len(builtin_genset("HEIS_STD")) == 4
    assert len(builtin_genset("PROD_S1")) == 8
    assert len(builtin_genset("PROD_S2")) == 6
    with pytest.raises(KeyError):
        builtin_genset("NOPE")


@pytest.mark.parametrize("label, balls", [
    ("HEIS_STD", (1, 5, 17, 53, 135)),
    ("PROD_S2", (1, 7, 29, 99, 287)),
    ("Z3_STD", (1, 7, 25, 63, 129)),
])
def test_small_balls(label, balls):
    assert enumerate_ball(builtin_genset(label), 4).balls == balls


def test_z3_matches_octahedral_numbers():
    c = enumerate_ball(builtin_genset("Z3_STD"), 20)
    n = np.arange(21)
    assert c.balls == tuple((2 * n + 1) * (2 * n * n + 2 * n + 3) // 3)


def test_census_invariants(heis_census_60):
    c = heis_census_60
    assert c.balls[0] == 1 and all(s > 0 for s in c.spheres)
    assert all(c.balls[n] <= 2 * n * c.spheres[n] for n in range(1, c.radius + 1))
    assert 12 <= c.ball(40) / c.ball(20) <= 20


def test_census_serial_equals_threaded(heis):
    assert enumerate_ball(heis, 25) == enumerate_ball(heis, 25, workers=3)


def test_swap_automorphism_preserves_balls(heis_ball_30):
    # (x, y, z) -> (y, x, -z + xy) permutes the standard generators
    for n in (5, 17, 30):
        rows = heis_ball_30.elements(n)
        img = np.column_stack([rows[:, 0], rows[:, 2], rows[:, 1], -rows[:, 3] + rows[:, 1] * rows[:, 2]])
        assert {tuple(r) for r in img} == {tuple(r) for r in rows}


def test_budget_reports_last_radius(heis):
    with pytest.raises(BudgetExceeded) as info:
        enumerate_ball(heis, 20, store=True, max_elements=500)
    assert info.value.last_radius == 5 and info.value.partial.balls[-1] == 299


def test_keycodec_roundtrip():
    codec = KeyCodec([3, 100, 100, 10**6])
    rng = np.random.default_rng(0)
    a = np.column_stack([rng.integers(-3, 4, 500), rng.integers(-100, 101, 500),
                         rng.integers(-100, 101, 500), rng.integers(-10**6, 10**6 + 1, 500)])
    assert (codec.decode(codec.encode(a)) == a).all()


def test_word_distance_examples(heis, s1, s2):
    assert word_distance(heis, H(0, 0, 1)) == 4
    assert word_distance(s1, P(5, 0, 0, 5)) == 5
    assert word_distance(s2, P(2, 0, 0, 0)) == 2
    with pytest.raises(BudgetExceeded):
        word_distance(heis, H(0, 0, 100), budget=10)


def test_split_examples(s1, s2):
    assert split_word_distance(s2, P(3, 1, 0, 0)) == 4
    assert split_word_distance(s2, P(0, 0, 0, 1)) == 4
    with pytest.raises(ValueError):
        split_word_distance(s1, P(1, 0, 0, 1))


def test_split_agrees_with_bfs(s2):
    census = enumerate_ball(s2, 8, store=True)
    rng = np.random.default_rng(11)
    rows = sample_ball(census, 1000, rng)
    exact = word_distances(s2, rows, budget=8)
    split = [split_word_distance(s2, P(*r)) for r in rows]
    assert list(exact) == split


def test_bidirectional_matches_layers(heis_ball_30, heis):
    rng = np.random.default_rng(5)
    for n in (3, 9, 14):
        layer = heis_ball_30.layers[n]
        for r in layer[rng.integers(0, len(layer), 5)]:
            assert word_distance(heis, H(*r[1:])) == n


def test_load_genset(tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("# standard\n1 0 0\n0 1 0\n")
    s = load_genset(f, Group.HEIS, close_inverses=True)
    assert set(s.elements) == set(builtin_genset("HEIS_STD").elements)
    with pytest.raises(ValueError):
        load_genset(f, Group.HEIS)  # not symmetric
