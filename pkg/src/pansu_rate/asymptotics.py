"""Large-scale analysis: limit norms, unit-ball volumes, rate and volume fits.

The experiments compare the rescaled word metric ``rho_S / n`` with the
limit metric through the dilation embedding ``gamma -> delta_{1/n}(gamma)``
(matrix coordinates converted to exponential ones first).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import integrate
from scipy.spatial import ConvexHull

from . import geometry as geo
from .lattice import (
    BallCensus,
    BudgetExceeded,
    DistanceTable,
    GenSet,
    Group,
    LatticeElement,
    builtin_genset,
    enumerate_ball,
    inv_rows,
    is_split,
    lat_pow,
    mul_rows,
    split_word_distance,
    word_distance,
    word_distances,
    word_product,
)


# --------------------------------------------------------------------------
# limit norm

class PolyhedralNorm:
    """Gauge of a centrally symmetric polytope containing the origin."""

    def __init__(self, points):
        pts = np.unique(np.asarray(points, dtype=np.float64), axis=0)
        self.dim = pts.shape[1]
        if np.linalg.matrix_rank(pts) < self.dim:
            raise ValueError("projected generators are not full-dimensional; no norm")
        hull = ConvexHull(pts)
        # facets as a x <= b with b > 0
        eq = hull.equations
        offsets = -eq[:, -1]
        if np.any(offsets <= 1e-12):
            raise ValueError("origin is not interior to the hull")
        self.normals = eq[:, :-1] / offsets[:, None]
        verts = pts[hull.vertices]
        self.vertices = tuple(sorted(tuple(float(c) for c in v) for v in verts))

    def gauge(self, u) -> float:
        return float(np.max(self.normals @ np.asarray(u, dtype=np.float64)))

    def gauge_array(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.float64)
        return np.max(u @ self.normals.T, axis=-1)

    def __call__(self, u):
        return self.gauge(u)


def abelian_projection(group: Group, rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows).reshape(-1, 4)
    if group is Group.HEIS:
        return rows[:, 1:3]
    if group is Group.PROD:
        return rows[:, 0:3]
    return rows[:, 1:4]


def pansu_norm(s: GenSet) -> PolyhedralNorm:
    return PolyhedralNorm(abelian_projection(s.group, s.as_array()))


def homogeneous_dimension(group: Group) -> int:
    """Sum of k * dim(layer k) over the graded Lie algebra."""
    layers = {Group.HEIS: (2, 1), Group.PROD: (3, 1), Group.Z3: (3,)}
    try:
        dims = layers[Group(group)]
    except (KeyError, ValueError):
        raise ValueError(f"unsupported group {group!r}") from None
    return sum(k * d for k, d in enumerate(dims, start=1))


def _is_l1(norm: PolyhedralNorm) -> bool:
    k = norm.dim
    expected = sorted(tuple(float(s) if j == i else 0.0 for j in range(k))
                      for i in range(k) for s in (-1, 1))
    return list(norm.vertices) == expected


def limit_distance_array(s: GenSet, rows: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """d_inf(id, delta_scale(gamma)) for lattice rows ``gamma`` in matrix coordinates."""
    norm = pansu_norm(s)
    rows = np.asarray(rows, dtype=np.float64).reshape(-1, 4)
    if s.group is Group.Z3:
        return norm.gauge_array(rows[:, 1:4] * scale)
    if not _is_l1(norm):
        raise ValueError("closed-form limit distance needs an l1 limit norm")
    x, y, z = geo.matrix_to_exp_array(rows[:, 1], rows[:, 2], rows[:, 3])
    x, y, z = scale * x, scale * y, scale * scale * z
    if s.group is Group.HEIS:
        return geo.d3_array(x, y, z)
    return geo.dinf_array(scale * rows[:, 0], x, y, z)


# --------------------------------------------------------------------------
# unit ball volume

def z_max(x: float, y: float) -> float:
    """Largest |z| with d3(x, y, z) <= 1, or -1 when (x, y) is outside the l1 ball."""
    ax, ay = abs(x), abs(y)
    s = ax + ay
    if s > 1:
        return -1.0
    m = max(ax, ay)
    half = ax * ay / 2
    z4 = ((1 + s) / 4) ** 2 - half
    if z4 >= m * m - half:
        return z4
    z3 = m * (1 - m) / 2
    if z3 >= half:
        return z3
    return half


def _heis_ball_volume(tol: float) -> float:
    # one quadrant, split along the diagonal where max(|x|,|y|) switches
    def inner(x):
        def f(y):
            return 2 * max(z_max(x, y), 0.0)
        a, _ = integrate.quad(f, 0, min(x, 1 - x), epsabs=0, epsrel=tol, limit=200)
        b = 0.0
        if x < 0.5:
            b, _ = integrate.quad(f, x, 1 - x, epsabs=0, epsrel=tol, limit=200)
        return a + b

    q, _ = integrate.quad(inner, 0, 1, epsabs=0, epsrel=tol, limit=200, points=[1 / 3, 0.5])
    return 4 * q


@lru_cache(maxsize=None)
def unit_ball_volume(metric: str = "d3", tol: float = 1e-9) -> float:
    """Lebesgue volume (exponential coordinates) of the limit unit ball."""
    vol3 = _heis_ball_volume(tol)
    if metric == "d3":
        return vol3
    if metric == "dinf":
        # slice at height v is a d3 ball of radius 1-|v|, volume vol3 * (1-|v|)^4
        w, _ = integrate.quad(lambda v: (1 - abs(v)) ** 4, -1, 1, points=[0], epsrel=tol)
        return vol3 * w
    raise ValueError(f"unknown metric {metric!r}")


def monte_carlo_ball_volume(samples: int, seed: int = 0, chunk: int = 1_000_000) -> float:
    """Rejection estimate of vol(B_d3(1)) in the box [-1,1]^2 x [-1/8,1/8]."""
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        x = rng.uniform(-1, 1, k)
        y = rng.uniform(-1, 1, k)
        z = rng.uniform(-0.125, 0.125, k)
        hits += int(np.count_nonzero(geo.d3_array(x, y, z) <= 1))
        done += k
    return hits / samples * 4 * 0.25


# --------------------------------------------------------------------------
# fits

@dataclass(frozen=True)
class RateFit:
    ns: tuple
    values: tuple
    slope: float
    intercept: float
    residual: float

    def predict(self, n):
        return math.exp(self.intercept) * n ** self.slope


def fit_rate(series: Iterable[Sequence[float]]) -> RateFit:
    pairs = [(float(n), float(v)) for n, v in series]
    if len(pairs) < 3:
        raise ValueError("a rate fit needs at least three samples")
    if any(n <= 0 or v <= 0 for n, v in pairs):
        raise ValueError("rate fits need positive n and values")
    ln = np.log([n for n, _ in pairs])
    lv = np.log([v for _, v in pairs])
    A = np.column_stack([ln, np.ones_like(ln)])
    coef, *_ = np.linalg.lstsq(A, lv, rcond=None)
    res = float(np.sum((A @ coef - lv) ** 2))
    return RateFit(tuple(n for n, _ in pairs), tuple(v for _, v in pairs),
                   float(coef[0]), float(coef[1]), res)


@dataclass(frozen=True)
class VolumeFit:
    label: str
    d: int
    window: tuple
    c_hat: float
    next_coefficient: float
    residuals: tuple  # (n, r_n)

    def max_abs_residual(self):
        return max(abs(r) for _, r in self.residuals)

    def median_abs_residual(self):
        return float(np.median([abs(r) for _, r in self.residuals]))


def fit_volume(census, d: int, window: Sequence[int], label: str = "") -> VolumeFit:
    """Fit |B(n)| / n^d = c + b / n over the window.

    ``census`` is a :class:`BallCensus` or a plain sequence of ball sizes
    indexed by radius.  The residuals are ``(|B(n)| - c n^d) / n^(d-1)``.
    """
    balls = census.balls if isinstance(census, BallCensus) else tuple(census)
    label = label or getattr(census, "label", "")
    n0, n1 = int(window[0]), int(window[1])
    if n0 < 1 or n1 <= n0:
        raise ValueError(f"bad window {window}")
    if n1 >= len(balls):
        raise ValueError(f"window end {n1} exceeds census radius {len(balls) - 1}")
    ns = np.arange(n0, n1 + 1, dtype=np.float64)
    ratio = np.array([balls[int(n)] for n in ns], dtype=np.float64) / ns ** d
    A = np.column_stack([np.ones_like(ns), 1 / ns])
    (c_hat, b), *_ = np.linalg.lstsq(A, ratio, rcond=None)
    resid = tuple((int(n), float((balls[int(n)] - c_hat * n ** d) / n ** (d - 1))) for n in ns)
    return VolumeFit(label, d, (n0, n1), float(c_hat), float(b), resid)


# --------------------------------------------------------------------------
# exact distances for product sets whose Z-moves are central

class HeisOracle:
    """Exact word lengths on H3(Z): table lookups, BFS beyond the table."""

    def __init__(self, s: GenSet, table_radius: int = 40, census: Optional[BallCensus] = None):
        if s.group is not Group.HEIS:
            raise ValueError("HeisOracle needs a Heisenberg generating set")
        self.genset = s
        if census is None or census.layers is None or census.radius < table_radius:
            census = enumerate_ball(s, table_radius, store=True)
        self.census = census
        self.table = DistanceTable(census, s)
        self.radius = census.radius
        self.fallbacks = 0
        # a word is a horizontal path of limit length <= its length when every
        # generator has limit length <= 1, which makes d3 a lower bound
        try:
            gens = s.as_array()
            self._d3_bound = bool(np.all(limit_distance_array(s, gens) <= 1 + 1e-12))
        except ValueError:
            self._d3_bound = False

    def lower_bound(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows).reshape(-1, 4)
        if not self._d3_bound:
            return np.zeros(len(rows), dtype=np.int64)
        d = limit_distance_array(self.genset, rows)
        return np.ceil(d - 1e-9).astype(np.int64)

    def lengths(self, rows: np.ndarray, exact: bool = True) -> np.ndarray:
        """Word lengths; entries beyond the table are -1 unless ``exact``."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, 4)
        out = self.table.lookup(rows)
        if exact and (out < 0).any():
            for i in np.flatnonzero(out < 0):
                r = rows[i]
                self.fallbacks += 1
                out[i] = word_distance(self.genset, LatticeElement.heis(r[1], r[2], r[3]),
                                       budget=8 * self.radius + 64)
        return out

    def length(self, g: LatticeElement) -> int:
        return int(self.lengths(np.array([g.coords]))[0])


def _sumsets(values: Sequence[int], kmax: int) -> list:
    """sums[k] = set of sums of k elements drawn from ``values`` with repetition."""
    sums = [{0}]
    for _ in range(kmax):
        sums.append({a + b for a in sums[-1] for b in values})
    return sums


_BIG = np.iinfo(np.int64).max


class CentralProductDistance:
    """Word lengths on H3(Z) x Z for sets made of central Z-moves and H3 moves.

    Each Z-move (±1; 0, 0, c) is central, so a word splits into k Z-moves
    and an H3 word.  The length is the minimum over k and over the central
    shift C the Z-moves can produce of k + rho_H(h * (0,0,-C)).  S1 and S2
    both have this shape.
    """

    def __init__(self, s: GenSet, oracle: HeisOracle):
        if s.group is not Group.PROD:
            raise ValueError("needs a product generating set")
        self.genset = s
        plus, minus, heis = [], [], []
        for e in s.elements:
            if e.v == 0:
                heis.append((e.x, e.y, e.z))
            elif e.x == 0 and e.y == 0 and abs(e.v) == 1:
                (plus if e.v > 0 else minus).append(e.z)
            else:
                raise ValueError(f"generator {e} is neither central Z-move nor H3 move")
        ref = sorted((g.x, g.y, g.z) for g in oracle.genset.elements)
        if sorted(heis) != ref:
            raise ValueError("H3 moves differ from the oracle's generating set")
        self.plus, self.minus = sorted(set(plus)), sorted(set(minus))
        self.oracle = oracle
        self._shift_cache = {}

    def _shifts(self, p: int, q: int) -> np.ndarray:
        key = (p, q)
        if key not in self._shift_cache:
            a = _sumsets(self.plus, p)[p]
            b = _sumsets(self.minus, q)[q]
            self._shift_cache[key] = np.array(sorted({x + y for x in a for y in b}), dtype=np.int64)
        return self._shift_cache[key]

    def lengths(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, 4)
        best = np.full(len(rows), _BIG, dtype=np.int64)
        # lowest possible cost among candidates that were not settled by the table
        floor = np.full(len(rows), _BIG, dtype=np.int64)
        T = self.oracle.radius
        av_all = np.abs(rows[:, 0])
        sgn = np.sign(rows[:, 0])
        for av in np.unique(av_all):
            av = int(av)
            for sign in ((1, -1) if av else (1,)):
                idx = np.flatnonzero((av_all == av) & ((sgn == sign) if av else True))
                if not len(idx):
                    continue
                v = av * sign
                sub = rows[idx]
                b = np.full(len(idx), _BIG, dtype=np.int64)
                f = np.full(len(idx), _BIG, dtype=np.int64)
                k = av
                while True:
                    live = np.flatnonzero(b > k)
                    if not len(live):
                        break
                    if k > av + 2 * T + 2:
                        f[live] = np.minimum(f[live], k)
                        break
                    C = self._shifts((k + v) // 2, (k - v) // 2)
                    H = np.repeat(sub[live], len(C), axis=0)
                    H[:, 0] = 0
                    H[:, 3] -= np.tile(C, len(live))
                    lb = k + self.oracle.lower_bound(H)
                    need = lb < np.repeat(b[live], len(C))
                    d = np.full(len(H), -2, dtype=np.int64)
                    d[need] = self.oracle.lengths(H[need], exact=False)
                    cost = np.where(d >= 0, k + d, _BIG).reshape(len(live), len(C))
                    b[live] = np.minimum(b[live], cost.min(axis=1))
                    miss = np.where(d == -1, np.maximum(lb, k + T + 1), _BIG).reshape(len(live), len(C))
                    f[live] = np.minimum(f[live], miss.min(axis=1))
                    k += 2
                best[idx] = b
                floor[idx] = f
        # a candidate beyond the table could still win; settle those exactly
        for i in np.flatnonzero(floor < best):
            best[i] = self._exact_one(rows[i], int(best[i]))
        return best

    def _exact_one(self, r, best: int) -> int:
        v = int(r[0])
        k = abs(v)
        H = self.oracle.genset
        while k < best:
            C = self._shifts((k + v) // 2, (k - v) // 2)
            rows = np.zeros((len(C), 4), dtype=np.int64)
            rows[:, 1], rows[:, 2], rows[:, 3] = r[1], r[2], r[3] - C
            lbs = self.oracle.lower_bound(rows)
            for j in np.argsort(lbs, kind="stable"):
                if k + lbs[j] >= best:
                    break
                budget = best - k - 1 if best < _BIG else 16 * self.oracle.radius + 64
                h = LatticeElement.heis(*rows[j, 1:])
                try:
                    best = min(best, k + word_distance(H, h, budget=budget))
                except BudgetExceeded:
                    pass
            k += 2
        return best

    def length(self, g: LatticeElement) -> int:
        return int(self.lengths(np.array([g.coords]))[0])


# --------------------------------------------------------------------------
# witnesses and distortion

def certified_distance(s: GenSet, g: LatticeElement, word: Sequence[LatticeElement]) -> Optional[int]:
    """len(word) if the word spells g and matches the abelian lower bound, else None.

    Every generator has limit-norm gauge <= 1 and the abelianisation is a
    homomorphism, so rho_S(g) >= gauge(pi(g)).
    """
    if word_product(s.group, word) != g or any(w not in s.elements for w in word):
        return None
    lower = math.ceil(pansu_norm(s).gauge(abelian_projection(s.group, np.array([g.coords]))[0]) - 1e-9)
    return len(word) if lower == len(word) else None


def gamma_n(n: int) -> LatticeElement:
    return LatticeElement.prod(n, 0, 0, n)


def witness_distance(s: GenSet, g: LatticeElement, word=None, budget: int = 256) -> int:
    if word is not None:
        d = certified_distance(s, g, word)
        if d is not None:
            return d
    if is_split(s):
        return split_word_distance(s, g, budget)
    return word_distance(s, g, budget)


@dataclass(frozen=True)
class WitnessGap:
    name: str
    rho: Optional[int]
    scaled_word: Optional[float]
    limit: float
    gap: Optional[float]


@dataclass(frozen=True)
class CorrespondenceReport:
    label: str
    n: int
    samples: int
    seed: int
    sampled_sup: float
    distortion: float
    witnesses: tuple
    recorded: tuple = ()  # pairs mirrored from the argument, not part of the sup

    def to_dict(self):
        return asdict(self)


def _mandatory_witnesses(s: GenSet, n: int) -> list:
    if s.group is Group.PROD:
        g = gamma_n(n)
        step = LatticeElement.prod(1, 0, 0, 1)
        word = [step] * n if step in s.elements else None
        return [("(id, gamma_n)", g, word)]
    a = s.elements[0]
    return [("(id, a^n)", lat_pow(a, n), [a] * n)]


def gh_distortion(s: GenSet, n: int, samples: int = 2000, seed: int = 0,
                  census: Optional[BallCensus] = None, table: Optional[DistanceTable] = None,
                  product_oracle: Optional[CentralProductDistance] = None,
                  record_pair_budget: int = 64) -> CorrespondenceReport:
    """Distortion of the dilation correspondence between B_S(n) and the limit unit ball.

    Pairs are drawn uniformly from B_S(n).  The sampled supremum is a lower
    bound on the true one; the mandatory witness pairs are always included.
    """
    rng = np.random.default_rng(seed)
    scale = 1.0 / n

    witnesses = []
    for name, g, word in _mandatory_witnesses(s, n):
        rho = witness_distance(s, g, word)
        lim = float(limit_distance_array(s, np.array([g.coords]), scale)[0])
        witnesses.append(WitnessGap(name, rho, rho / n, lim, abs(rho / n - lim)))

    sampled_sup = 0.0
    if samples > 0:
        if product_oracle is not None:
            pool = sample_ball_by_rejection(product_oracle, n, 4 * samples, rng)
        else:
            if census is None or census.layers is None or census.radius < n:
                census = enumerate_ball(s, n, store=True)
            pool = census.elements(n)
        i = rng.integers(0, len(pool), size=samples)
        j = rng.integers(0, len(pool), size=samples)
        h = mul_rows(s.group, inv_rows(s.group, pool[i]), pool[j])
        if product_oracle is not None:
            rho = product_oracle.lengths(h)
        else:
            rho = table.lookup(h) if table is not None else np.full(len(h), -1)
            miss = rho < 0
            if miss.any():
                rho[miss] = word_distances(s, h[miss], budget=2 * n)
        lim = limit_distance_array(s, h, scale)
        sampled_sup = float(np.max(np.abs(rho / n - lim)))

    recorded = []
    if s.group is Group.PROD:
        # (gamma_n, gamma_n') with gamma_n' = (n;0,0,-n): the difference is central
        diff = LatticeElement.prod(0, 0, 0, -2 * n)
        lim = float(limit_distance_array(s, np.array([diff.coords]), scale)[0])
        try:
            oracle = product_oracle
            if oracle is None:
                try:
                    oracle = CentralProductDistance(
                        s, HeisOracle(builtin_genset("HEIS_STD"), table_radius=min(24, 2 * n)))
                except ValueError:
                    oracle = None
            if oracle is not None:
                rho = oracle.length(diff)
            else:
                rho = word_distance(s, diff, budget=record_pair_budget)
            recorded.append(WitnessGap("((n;0,0,n), (n;0,0,-n))", rho, rho / n, lim,
                                       abs(rho / n - lim)))
        except BudgetExceeded:
            recorded.append(WitnessGap("((n;0,0,n), (n;0,0,-n))", None, None, lim, None))

    distortion = max([sampled_sup] + [w.gap for w in witnesses])
    return CorrespondenceReport(s.label, n, samples, seed, sampled_sup, distortion,
                                tuple(witnesses), tuple(recorded))


def sample_ball_by_rejection(oracle: CentralProductDistance, n: int, count: int,
                             rng: np.random.Generator, sphere: bool = False,
                             max_rounds: int = 200) -> np.ndarray:
    """Uniform elements of B(n) (or S(n)) of a central-product set via box rejection."""
    heis_layers = oracle.oracle.census.layers
    if n > oracle.oracle.radius:
        raise BudgetExceeded(f"radius {n} exceeds the H3 table radius {oracle.oracle.radius}")
    zmax = int(max(np.abs(layer[:, 3]).max() for layer in heis_layers[: n + 1]))
    shift = max([abs(c) for c in oracle.plus + oracle.minus] + [0])
    zb = zmax + shift * n
    xb = n
    kept = []
    total = 0
    for _ in range(max_rounds):
        m = max(4 * count, 4096)
        cand = np.column_stack([
            rng.integers(-n, n + 1, m), rng.integers(-xb, xb + 1, m),
            rng.integers(-xb, xb + 1, m), rng.integers(-zb, zb + 1, m)]).astype(np.int64)
        cand = cand[np.abs(cand[:, :3]).sum(axis=1) <= n]
        d = oracle.lengths(cand)
        ok = d == n if sphere else d <= n
        kept.append(cand[ok])
        total += int(ok.sum())
        if total >= count:
            break
    out = np.concatenate(kept)[:count]
    if len(out) == 0:
        raise RuntimeError(f"rejection sampling found no elements at radius {n}")
    return out


# --------------------------------------------------------------------------
# the two word metrics on H3(Z) x Z

@dataclass(frozen=True)
class GapRow:
    n: int
    g: int
    ratio: float
    rho1_minus_n: int


def sqrt_gap_experiment(ns: Iterable[int], budget: int = 256) -> list:
    """g_n = rho_2(id, gamma_n) - n = rho_H(0,0,n), with the S1 companion column."""
    s1, s2 = builtin_genset("PROD_S1"), builtin_genset("PROD_S2")
    step = LatticeElement.prod(1, 0, 0, 1)
    rows = []
    for n in ns:
        g = gamma_n(n)
        rho2 = split_word_distance(s2, g, budget)
        rho1 = certified_distance(s1, g, [step] * n)
        if rho1 is None:
            raise RuntimeError("the S1 word for gamma_n failed certification")
        rows.append(GapRow(n, rho2 - n, (rho2 - n) / math.sqrt(n), rho1 - n))
    return rows


@dataclass(frozen=True)
class RatioRow:
    n: int
    deviation: float
    samples: int


def ratio_convergence(s1: GenSet, s2: GenSet, radii: Sequence[int], samples: int = 200,
                      seed: int = 0, oracle: Optional[HeisOracle] = None,
                      include_witness: bool = True) -> list:
    """Per radius, max |rho_1/rho_2 - 1| over sampled elements of the s1-sphere.

    Product sets built from central Z-moves use :class:`CentralProductDistance`;
    anything else falls back to enumerating the s1-ball and a batched BFS for s2.
    """
    if s1.group is not s2.group:
        raise ValueError("generating sets live in different groups")
    rng = np.random.default_rng(seed)
    R = max(radii)
    rows = []
    fast = None
    if s1.group is Group.PROD:
        try:
            oracle = oracle or HeisOracle(builtin_genset("HEIS_STD"), table_radius=2 * R)
            fast = (CentralProductDistance(s1, oracle), CentralProductDistance(s2, oracle))
        except ValueError:
            fast = None
    census = None if fast else enumerate_ball(s1, R, store=True)
    for n in radii:
        if fast:
            pts = sample_ball_by_rejection(fast[0], n, samples, rng, sphere=True)
            r1 = fast[0].lengths(pts)
            r2 = fast[1].lengths(pts)
        else:
            layer = census.layers[n]
            pts = layer[rng.integers(0, len(layer), size=min(samples, len(layer)))]
            r1 = np.full(len(pts), n)
            r2 = word_distances(s2, pts, budget=8 * R)
        dev = np.abs(r1 / r2 - 1)
        if include_witness and s1.group is Group.PROD:
            g = gamma_n(n)
            w1 = fast[0].length(g) if fast else word_distance(s1, g, 2 * n)
            if w1 == n:
                w2 = fast[1].length(g) if fast else word_distance(s2, g, 8 * n)
                dev = np.append(dev, abs(w1 / w2 - 1))
        rows.append(RatioRow(int(n), float(dev.max()), len(dev)))
    return rows


# --------------------------------------------------------------------------
# reports

def report(experiment: str, genset: str, seed: int, rows: list, fit: Optional[RateFit] = None) -> dict:
    def plain(r):
        if hasattr(r, "__dataclass_fields__"):
            return asdict(r)
        return r

    out = {"experiment": experiment, "genset": genset, "seed": int(seed),
           "rows": [plain(r) for r in rows]}
    if fit is not None:
        out["fit"] = {"slope": fit.slope, "intercept": fit.intercept}
    return out


def report_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=False) + "\n"


def report_csv(rep: dict) -> str:
    rows = rep["rows"]
    if not rows:
        return ""
    flat = [{k: v for k, v in r.items() if not isinstance(v, (list, tuple, dict))} for r in rows]
    cols = list(flat[0])
    lines = [",".join(cols)]
    for r in flat:
        lines.append(",".join("" if r[c] is None else repr(r[c]) if isinstance(r[c], float) else str(r[c])
                              for c in cols))
    return "\n".join(lines) + "\n"
