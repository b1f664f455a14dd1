"""Word metrics on H3(Z), H3(Z) x Z and Z^3.

Heisenberg factors use matrix coordinates, ``(x,y,z)(x',y',z') =
(x+x', y+y', z+z'+x*y')``.  Every element is carried as four integers
``(v, x, y, z)``; ``v`` is zero for the pure Heisenberg group.

Enumeration is a layered BFS on the Cayley graph.  The graph is undirected
(generating sets are symmetric), so the neighbours of sphere n lie in
spheres n-1, n, n+1 and dedup only needs the two previous layers.  States
are packed into int64 keys with a mixed radix sized from the radius.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

INT64_MAX = 2**63 - 1


class Group(enum.Enum):
    HEIS = "heis"
    PROD = "prod"  # H3(Z) x Z
    Z3 = "z3"


class BudgetExceeded(RuntimeError):
    """An enumeration or distance query ran past its budget."""

    def __init__(self, message, last_radius=None, partial=None):
        super().__init__(message)
        self.last_radius = last_radius
        self.partial = partial


@dataclass(frozen=True)
class LatticeElement:
    group: Group
    v: int
    x: int
    y: int
    z: int

    @classmethod
    def heis(cls, x, y, z):
        return cls(Group.HEIS, 0, int(x), int(y), int(z))

    @classmethod
    def prod(cls, v, x, y, z):
        return cls(Group.PROD, int(v), int(x), int(y), int(z))

    @classmethod
    def z3(cls, x, y, z):
        return cls(Group.Z3, 0, int(x), int(y), int(z))

    @property
    def coords(self) -> tuple:
        return (self.v, self.x, self.y, self.z)

    def __mul__(self, other):
        return lat_mul(self, other)

    def __repr__(self):
        if self.group is Group.PROD:
            return f"({self.v};{self.x},{self.y},{self.z})"
        return f"{self.group.value}({self.x},{self.y},{self.z})"


def identity(group: Group) -> LatticeElement:
    return LatticeElement(group, 0, 0, 0, 0)


def _checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise OverflowError(f"coordinate {value} leaves the signed 64-bit range")
    return value


def lat_mul(p: LatticeElement, q: LatticeElement) -> LatticeElement:
    if p.group is not q.group:
        raise ValueError(f"cannot multiply {p.group.value} by {q.group.value} elements")
    cross = 0 if p.group is Group.Z3 else p.x * q.y
    return LatticeElement(
        p.group,
        _checked(p.v + q.v),
        _checked(p.x + q.x),
        _checked(p.y + q.y),
        _checked(p.z + q.z + cross),
    )


def lat_inv(p: LatticeElement) -> LatticeElement:
    cross = 0 if p.group is Group.Z3 else p.x * p.y
    return LatticeElement(p.group, -p.v, -p.x, -p.y, _checked(-p.z + cross))


def lat_pow(p: LatticeElement, k: int) -> LatticeElement:
    out = identity(p.group)
    base = p if k >= 0 else lat_inv(p)
    for _ in range(abs(k)):
        out = lat_mul(out, base)
    return out


def word_product(group: Group, word: Iterable[LatticeElement]) -> LatticeElement:
    out = identity(group)
    for g in word:
        out = lat_mul(out, g)
    return out


# --------------------------------------------------------------------------
# generating sets

@dataclass(frozen=True)
class GenSet:
    group: Group
    elements: tuple
    label: str = "custom"

    def __post_init__(self):
        elems = tuple(self.elements)
        if not elems:
            raise ValueError("a generating set needs at least one generator")
        ident = identity(self.group)
        for g in elems:
            if g.group is not self.group:
                raise ValueError(f"generator {g} is not in {self.group.value}")
            if g == ident:
                raise ValueError("the identity is implicit and must not be listed")
        if len(set(elems)) != len(elems):
            raise ValueError("duplicate generators")
        present = set(elems)
        missing = [g for g in elems if lat_inv(g) not in present]
        if missing:
            raise ValueError(f"generating set is not symmetric; missing inverses of {missing}")
        object.__setattr__(self, "elements", elems)

    def __len__(self):
        return len(self.elements)

    def as_array(self) -> np.ndarray:
        return np.array([g.coords for g in self.elements], dtype=np.int64)


def _sym(group, *coords):
    out = []
    for c in coords:
        g = LatticeElement(group, *c)
        out += [g, lat_inv(g)]
    return tuple(out)


BUILTIN_LABELS = ("HEIS_STD", "PROD_S1", "PROD_S2", "Z3_STD")


def builtin_genset(label: str) -> GenSet:
    label = label.upper()
    if label == "HEIS_STD":
        return GenSet(Group.HEIS, _sym(Group.HEIS, (0, 1, 0, 0), (0, 0, 1, 0)), label)
    if label == "PROD_S1":
        return GenSet(Group.PROD, _sym(Group.PROD, (1, 0, 0, 1), (1, 0, 0, -1),
                                      (0, 1, 0, 0), (0, 0, 1, 0)), label)
    if label == "PROD_S2":
        return GenSet(Group.PROD, _sym(Group.PROD, (1, 0, 0, 0), (0, 1, 0, 0),
                                      (0, 0, 1, 0)), label)
    if label == "Z3_STD":
        return GenSet(Group.Z3, _sym(Group.Z3, (0, 1, 0, 0), (0, 0, 1, 0),
                                    (0, 0, 0, 1)), label)
    raise KeyError(f"unknown generating set {label!r}; choose from {BUILTIN_LABELS}")


def load_genset(path, group: Group, close_inverses: bool = False, label=None) -> GenSet:
    """Read ``v x y z`` (or ``x y z`` for H3/Z3) per line; '#' starts a comment."""
    elems = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(t) for t in line.split()]
        if group is Group.PROD:
            if len(nums) != 4:
                raise ValueError(f"expected 'v x y z', got {raw!r}")
            g = LatticeElement(group, *nums)
        else:
            if len(nums) != 3:
                raise ValueError(f"expected 'x y z', got {raw!r}")
            g = LatticeElement(group, 0, *nums)
        elems.append(g)
    if close_inverses:
        elems += [lat_inv(g) for g in elems]
    uniq = list(dict.fromkeys(elems))
    return GenSet(group, tuple(uniq), label or Path(path).stem)


def is_split(s: GenSet) -> bool:
    """True if every generator moves exactly one direct factor of H3(Z) x Z."""
    if s.group is not Group.PROD:
        return False
    return all((g.v != 0) != (g.x != 0 or g.y != 0 or g.z != 0) for g in s.elements)


# --------------------------------------------------------------------------
# vectorised arithmetic and key packing

def mul_array(group: Group, a: np.ndarray, g: Sequence[int]) -> np.ndarray:
    """Right-multiply every row of ``a`` (shape (k, 4)) by the generator ``g``."""
    out = a + np.asarray(g, dtype=np.int64)
    if group is not Group.Z3:
        out[:, 3] += a[:, 1] * g[2]
    return out


def mul_rows(group: Group, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = a + b
    if group is not Group.Z3:
        out[:, 3] += a[:, 1] * b[:, 2]
    return out


def inv_rows(group: Group, a: np.ndarray) -> np.ndarray:
    out = -a
    if group is not Group.Z3:
        out[:, 3] += a[:, 1] * a[:, 2]
    return out


def coordinate_bounds(s: GenSet, radius: int) -> np.ndarray:
    """Per-coordinate bounds |c_i| <= b_i valid on the whole ball of ``radius``."""
    gens = np.abs(s.as_array())
    step = gens.max(axis=0)
    r = int(radius)
    b = [int(step[i]) * r for i in range(4)]
    if s.group is not Group.Z3:
        # the z increment at each step is at most |x| * |g_y| <= (r * step_x) * step_y
        b[3] = int(step[3]) * r + int(step[1]) * int(step[2]) * r * r
    return np.array(b, dtype=object)


class KeyCodec:
    """Mixed-radix packing of (v, x, y, z) rows into int64 keys."""

    def __init__(self, bounds):
        self.bounds = [int(b) for b in bounds]
        self.widths = [2 * b + 1 for b in self.bounds]
        total = 1
        for w in self.widths:
            total *= w
        if total > INT64_MAX:
            raise OverflowError(f"state space of size {total} does not fit 64-bit keys")
        self.mult = [self.widths[1] * self.widths[2] * self.widths[3],
                     self.widths[2] * self.widths[3], self.widths[3], 1]

    def fits(self, a: np.ndarray) -> bool:
        if len(a) == 0:
            return True
        m = np.abs(a).max(axis=0)
        return all(int(m[i]) <= self.bounds[i] for i in range(4))

    def encode(self, a: np.ndarray) -> np.ndarray:
        key = np.zeros(len(a), dtype=np.int64)
        for i in range(4):
            key += (a[:, i] + self.bounds[i]) * self.mult[i]
        return key

    def decode(self, key: np.ndarray) -> np.ndarray:
        out = np.empty((len(key), 4), dtype=np.int64)
        rest = key.copy()
        for i in range(4):
            out[:, i], rest = np.divmod(rest, self.mult[i])
            out[:, i] -= self.bounds[i]
        return out


def _expand(group, gens, layer, codec, workers):
    """Sorted unique keys of ``layer * gens``."""

    def chunk(rows):
        parts = [codec.encode(mul_array(group, rows, g)) for g in gens]
        return np.unique(np.concatenate(parts))

    if workers <= 1 or len(layer) < 4096:
        return chunk(layer)
    pieces = np.array_split(layer, workers)
    with ThreadPoolExecutor(workers) as pool:
        results = list(pool.map(chunk, pieces))
    return np.unique(np.concatenate(results))


def _minus(keys: np.ndarray, *sorted_sets: np.ndarray) -> np.ndarray:
    for s in sorted_sets:
        if len(s) and len(keys):
            keys = keys[~np.isin(keys, s, assume_unique=True)]
    return keys


# --------------------------------------------------------------------------
# ball enumeration

@dataclass(frozen=True)
class BallCensus:
    label: str
    group: Group
    radius: int
    spheres: tuple
    layers: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def balls(self) -> tuple:
        out, acc = [], 0
        for s in self.spheres:
            acc += s
            out.append(acc)
        return tuple(out)

    def ball(self, n: int) -> int:
        return self.balls[n]

    def sphere(self, n: int) -> int:
        return self.spheres[n]

    def elements(self, upto: Optional[int] = None) -> np.ndarray:
        if self.layers is None:
            raise ValueError("census was built without an element store")
        upto = self.radius if upto is None else upto
        return np.concatenate(self.layers[: upto + 1])

    def to_csv(self) -> str:
        rows = ["radius,sphere,ball"]
        rows += [f"{n},{s},{b}" for n, (s, b) in enumerate(zip(self.spheres, self.balls))]
        return "\n".join(rows) + "\n"


def enumerate_ball(s: GenSet, R: int, store: bool = False,
                   max_elements: Optional[int] = None, workers: int = 1) -> BallCensus:
    """Exact sphere and ball sizes of the word metric up to radius ``R``.

    ``max_elements`` caps the number of stored elements (or, without a
    store, the size of a single layer); exceeding it raises
    :class:`BudgetExceeded` carrying the census up to the last full radius.
    """
    if R < 0:
        raise ValueError("radius must be non-negative")
    codec = KeyCodec(coordinate_bounds(s, R))
    gens = [tuple(int(c) for c in g.coords) for g in s.elements]
    cur = np.zeros((1, 4), dtype=np.int64)
    cur_keys = codec.encode(cur)
    prev_keys = np.empty(0, dtype=np.int64)
    spheres = [1]
    layers = [cur] if store else None
    held = 1
    for n in range(1, R + 1):
        new_keys = _minus(_expand(s.group, gens, cur, codec, workers), cur_keys, prev_keys)
        held = held + len(new_keys) if store else len(new_keys)
        if max_elements is not None and held > max_elements:
            partial = BallCensus(s.label, s.group, n - 1, tuple(spheres),
                                 tuple(layers) if store else None)
            raise BudgetExceeded(f"{s.label}: radius {n} needs more than {max_elements} elements",
                                 last_radius=n - 1, partial=partial)
        cur = codec.decode(new_keys)
        prev_keys, cur_keys = cur_keys, new_keys
        spheres.append(len(new_keys))
        if store:
            layers.append(cur)
    return BallCensus(s.label, s.group, R, tuple(spheres), tuple(layers) if store else None)


# --------------------------------------------------------------------------
# distances

def _as_rows(g) -> np.ndarray:
    if isinstance(g, LatticeElement):
        return np.array([g.coords], dtype=np.int64)
    return np.asarray(g, dtype=np.int64).reshape(-1, 4)


def word_distance(s: GenSet, g: LatticeElement, budget: int = 64) -> int:
    """Exact word length of ``g`` by meet-in-the-middle BFS.

    Forward spheres grow from the identity, backward spheres from ``g``;
    the smaller frontier is expanded, and the first total depth at which
    the two current spheres meet is the distance.
    """
    if g.group is not s.group:
        raise ValueError("element and generating set live in different groups")
    target = _as_rows(g)
    if not target.any():
        return 0
    # either side may run to the full budget; the backward ball is g * B(budget)
    b = [int(c) for c in coordinate_bounds(s, budget)]
    t = [abs(int(c)) for c in target[0]]
    step_y = int(np.abs(s.as_array()[:, 2]).max())
    bounds = [b[0] + t[0], b[1] + t[1], b[2] + t[2], b[3] + t[3]]
    if s.group is not Group.Z3:
        bounds[3] += t[1] * step_y * budget
    codec = KeyCodec(bounds)
    gens = [tuple(int(c) for c in e.coords) for e in s.elements]

    fwd = [np.zeros((1, 4), dtype=np.int64), codec.encode(np.zeros((1, 4), dtype=np.int64)),
           np.empty(0, dtype=np.int64)]
    bwd = [target, codec.encode(target), np.empty(0, dtype=np.int64)]
    depth = [0, 0]
    while depth[0] + depth[1] < budget:
        side = 0 if len(fwd[1]) <= len(bwd[1]) else 1
        rows, keys, prev = fwd if side == 0 else bwd
        new = _minus(_expand(s.group, gens, rows, codec, 1), keys, prev)
        state = [codec.decode(new), new, keys]
        if side == 0:
            fwd = state
        else:
            bwd = state
        depth[side] += 1
        if len(np.intersect1d(fwd[1], bwd[1], assume_unique=True)):
            return depth[0] + depth[1]
    raise BudgetExceeded(f"word length of {g} exceeds {budget}")


def word_distances(s: GenSet, targets: np.ndarray, budget: int) -> np.ndarray:
    """Word lengths of many targets (rows ``(v,x,y,z)``) from one forward BFS."""
    targets = _as_rows(targets)
    codec = KeyCodec(coordinate_bounds(s, budget))
    if not codec.fits(targets):
        raise BudgetExceeded("some targets lie outside the reachable box of the budget")
    tkeys = codec.encode(targets)
    order = np.argsort(tkeys, kind="stable")
    sorted_t = tkeys[order]
    out = np.full(len(targets), -1, dtype=np.int64)

    def mark(layer_keys, n):
        hit = np.isin(sorted_t, layer_keys)
        sel = order[hit]
        out[sel] = np.where(out[sel] < 0, n, out[sel])

    gens = [tuple(int(c) for c in e.coords) for e in s.elements]
    cur = np.zeros((1, 4), dtype=np.int64)
    cur_keys = codec.encode(cur)
    prev_keys = np.empty(0, dtype=np.int64)
    mark(cur_keys, 0)
    n = 0
    while (out < 0).any():
        if n >= budget:
            raise BudgetExceeded(f"{int((out < 0).sum())} targets lie beyond radius {budget}")
        n += 1
        new_keys = _minus(_expand(s.group, gens, cur, codec, 1), cur_keys, prev_keys)
        mark(new_keys, n)
        cur = codec.decode(new_keys)
        prev_keys, cur_keys = cur_keys, new_keys
    return out


def split_word_distance(s: GenSet, g: LatticeElement, budget: int = 64) -> int:
    """|v| + word length of the Heisenberg part, for split generating sets.

    Valid because a split set is a disjoint union of Z-generators and
    H3(Z)-generators, which commute.  The Z-factor generators must be ±1.
    """
    if not is_split(s):
        raise ValueError(f"{s.label} is not split across the direct factors")
    vsteps = {abs(e.v) for e in s.elements if e.v}
    if vsteps != {1}:
        raise ValueError("split distance requires the Z factor to be generated by ±1")
    heis = heis_factor(s)
    return abs(g.v) + word_distance(heis, LatticeElement.heis(g.x, g.y, g.z), budget)


def heis_factor(s: GenSet) -> GenSet:
    """The H3(Z) generators of a split product set, as a Heisenberg generating set."""
    elems = tuple(LatticeElement.heis(e.x, e.y, e.z) for e in s.elements if e.v == 0)
    return GenSet(Group.HEIS, elems, f"{s.label}:heis")


class DistanceTable:
    """Word lengths of every element of a stored census, for fast lookups."""

    def __init__(self, census: BallCensus, s: GenSet):
        if census.layers is None:
            raise ValueError("distance tables need a census with stored elements")
        self.radius = census.radius
        self.group = census.group
        self.codec = KeyCodec(coordinate_bounds(s, census.radius))
        keys = [self.codec.encode(layer) for layer in census.layers]
        dist = [np.full(len(k), n, dtype=np.int16) for n, k in enumerate(keys)]
        keys = np.concatenate(keys)
        order = np.argsort(keys)
        self.keys = keys[order]
        self.dist = np.concatenate(dist)[order]

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Distances of ``rows``; -1 where the element lies outside the table."""
        rows = _as_rows(rows)
        out = np.full(len(rows), -1, dtype=np.int64)
        inside = np.all(np.abs(rows) <= np.array(self.codec.bounds, dtype=np.int64), axis=1)
        if inside.any():
            k = self.codec.encode(rows[inside])
            pos = np.searchsorted(self.keys, k)
            pos = np.minimum(pos, len(self.keys) - 1)
            found = self.keys[pos] == k
            vals = np.where(found, self.dist[pos].astype(np.int64), -1)
            out[inside] = vals
        return out


def sample_ball(census: BallCensus, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample (with replacement) of ``count`` elements of the stored ball."""
    elems = census.elements()
    return elems[rng.integers(0, len(elems), size=count)]
