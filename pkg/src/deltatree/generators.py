"""Sample spaces: radial plane, Poincare disk, ultrametric fillings, graph families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadSize, DuplicatePoint, EmptyFamily, PointOutsideDisk
from .geodesic_graph import WeightedGraph, build_graph
from .metric_space import FiniteMetricSpace, ValidationReport, build_space, validate_metric

DISK_MARGIN = 1e-6


def _labels(n, labels, prefix="p"):
    if labels is None:
        return [f"{prefix}{i}" for i in range(n)]
    if len(labels) != n:
        raise BadSize(f"{len(labels)} labels for {n} points")
    return list(labels)


def radial_distance(x, y) -> float:
    """Euclidean distance along a common ray through the origin, else via the origin."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nx, ny = float(np.hypot(*x)), float(np.hypot(*y))
    cross = x[0] * y[1] - x[1] * y[0]
    if abs(cross) <= 1e-12 * max(nx * ny, np.finfo(float).tiny):
        return float(np.hypot(*(x - y)))
    return nx + ny


def radial_space(points: Sequence, labels=None) -> FiniteMetricSpace:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    if n == 0:
        raise BadSize("need at least one point")
    for i, j in itertools.combinations(range(n), 2):
        if np.array_equal(pts[i], pts[j]):
            raise DuplicatePoint(f"points {i} and {j} coincide at {tuple(pts[i])}")
    d = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        d[i, j] = d[j, i] = radial_distance(pts[i], pts[j])
    return build_space(_labels(n, labels), d)


def random_radial_points(n: int, seed: int, rays: int = 4) -> np.ndarray:
    """Points on a few rays through the origin (opposite rays included), plus
    some in general position, so both branches of the radial metric occur."""
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0, np.pi, size=rays)
    pts = []
    seen = set()
    while len(pts) < n:
        if rng.random() < 0.7:
            a = angles[int(rng.integers(rays))] + (np.pi if rng.random() < 0.5 else 0.0)
        else:
            a = rng.uniform(0, 2 * np.pi)
        r = float(np.round(rng.uniform(0.1, 5.0), 6))
        p = (r * np.cos(a), r * np.sin(a))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return np.array(pts)


def poincare_distance(u, v) -> float:
    """Disk-model distance, evaluated as ``2 asinh(|u-v| / sqrt((1-|u|^2)(1-|v|^2)))``.

    Equal to ``arcosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2)))`` but accurate for
    nearby points.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    num = float(np.linalg.norm(u - v))
    den = np.sqrt((1.0 - u @ u) * (1.0 - v @ v))
    return float(2.0 * np.arcsinh(num / den))


def poincare_space(points: Sequence, labels=None) -> FiniteMetricSpace:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise BadSize("points must be a nonempty list of coordinate vectors")
    norms = np.linalg.norm(pts, axis=1)
    bad = np.flatnonzero(norms >= 1.0 - DISK_MARGIN)
    if bad.size:
        raise PointOutsideDisk(f"point {int(bad[0])} has norm {norms[bad[0]]}")
    n = len(pts)
    d = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        d[i, j] = d[j, i] = poincare_distance(pts[i], pts[j])
    return build_space(_labels(n, labels), d)


def sample_poincare(n: int, seed: int, max_radius: float = 0.95, dim: int = 2) -> np.ndarray:
    """Points uniform in angle, with hyperbolic radius uniform up to that of ``max_radius``."""
    rng = np.random.default_rng(seed)
    rho_max = 2 * np.arctanh(max_radius)
    rho = rng.uniform(0, rho_max, size=n)
    dirs = rng.normal(size=(n, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return np.tanh(rho / 2)[:, None] * dirs


@dataclass(frozen=True)
class Ball:
    id: str
    members: frozenset[int]
    nominal_diameter: float


@dataclass(frozen=True)
class UltrametricBallFamily:
    """Balls of an ultrametric space ``points``; members are point indices."""

    points: FiniteMetricSpace
    balls: tuple[Ball, ...]

    def __post_init__(self):
        for b in self.balls:
            if not b.members:
                raise ValueError(f"ball {b.id!r} is empty")
            if not b.nominal_diameter > 0:
                raise ValueError(f"ball {b.id!r} has nonpositive nominal diameter")


def ball_family(points: FiniteMetricSpace, scale: float) -> UltrametricBallFamily:
    """All distinct closed balls of ``points``; nominal diameter ``max(diam, scale)``."""
    d = points.dist
    found: dict[frozenset[int], None] = {}
    for c in range(points.n):
        for r in sorted(set(d[c].tolist())):
            found.setdefault(frozenset(np.flatnonzero(d[c] <= r).tolist()), None)
    balls = []
    for k, members in enumerate(sorted(found, key=lambda m: (len(m), sorted(m)))):
        idx = sorted(members)
        diam = float(d[np.ix_(idx, idx)].max())
        balls.append(Ball(f"B{k}", members, max(diam, scale)))
    return UltrametricBallFamily(points, tuple(balls))


def dyadic_ultrametric(depth: int) -> FiniteMetricSpace:
    """Binary words of length ``depth`` with ``d = 2**-(common prefix length)``."""
    if depth < 1:
        raise BadSize("depth must be >= 1")
    words = ["".join(w) for w in itertools.product("01", repeat=depth)]
    n = len(words)
    d = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        k = next(t for t in range(depth) if words[i][t] != words[j][t])
        d[i, j] = d[j, i] = 2.0 ** -k
    return build_space(words, d)


def dyadic_family(depth: int, scale: float | None = None) -> UltrametricBallFamily:
    """Cylinder sets (all prefixes) of the dyadic ultrametric as a ball family."""
    pts = dyadic_ultrametric(depth)
    if scale is None:
        scale = 2.0 ** -depth
    balls = []
    for length in range(depth + 1):
        for prefix in itertools.product("01", repeat=length):
            pre = "".join(prefix)
            members = frozenset(i for i, w in enumerate(pts.labels) if w.startswith(pre))
            idx = sorted(members)
            diam = float(pts.dist[np.ix_(idx, idx)].max())
            balls.append(Ball(pre or "root", members, max(diam, scale)))
    return UltrametricBallFamily(pts, tuple(balls))


@dataclass(frozen=True)
class Filling:
    space: FiniteMetricSpace
    validation: ValidationReport


def filling_distance(diam_a: float, diam_b: float, diam_union: float) -> float:
    """``2 log(diam(A u B) / sqrt(diam A * diam B))``."""
    return float(2.0 * np.log(diam_union / np.sqrt(diam_a * diam_b)))


def ultrametric_filling(family: UltrametricBallFamily) -> Filling:
    if not family.balls:
        raise EmptyFamily("ball family is empty")
    balls = family.balls
    d = family.points.dist
    m = len(balls)
    h = np.zeros((m, m))
    for a, b in itertools.combinations(range(m), 2):
        A, B = balls[a], balls[b]
        cross = float(d[np.ix_(sorted(A.members), sorted(B.members))].max())
        union = max(A.nominal_diameter, B.nominal_diameter, cross)
        h[a, b] = h[b, a] = filling_distance(A.nominal_diameter, B.nominal_diameter, union)
    space = build_space([b.id for b in balls], h)
    return Filling(space, validate_metric(space))


def cycle_graph(n: int, length: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise BadSize(f"a cycle needs at least 3 vertices, got {n}")
    if not length > 0:
        raise BadSize("edge length must be positive")
    return build_graph([f"c{i}" for i in range(n)], [(i, (i + 1) % n, length) for i in range(n)])


def path_graph(n: int, length: float = 1.0) -> WeightedGraph:
    if n < 1:
        raise BadSize("a path needs at least 1 vertex")
    return build_graph([f"v{i}" for i in range(n)], [(i, i + 1, length) for i in range(n - 1)])


def random_tree(n: int, seed: int, lengths: tuple[float, float] = (0.5, 2.0)) -> WeightedGraph:
    """Random recursive tree: vertex ``i`` hangs off a uniform earlier vertex."""
    if n < 1:
        raise BadSize(f"a tree needs at least 1 vertex, got {n}")
    lo, hi = lengths
    if not 0 < lo <= hi:
        raise BadSize(f"bad length range {lengths}")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(1, n):
        parent = int(rng.integers(i))
        w = float(rng.uniform(lo, hi)) if hi > lo else float(lo)
        edges.append((parent, i, w))
    return build_graph([f"v{i}" for i in range(n)], edges)


def grid_graph(w: int, h: int) -> WeightedGraph:
    if w < 1 or h < 1:
        raise BadSize(f"grid dimensions must be positive, got {w}x{h}")
    labels = [f"g{i}_{j}" for j in range(h) for i in range(w)]
    edges = []
    for j in range(h):
        for i in range(w):
            k = j * w + i
            if i + 1 < w:
                edges.append((k, k + 1, 1.0))
            if j + 1 < h:
                edges.append((k, k + w, 1.0))
    return build_graph(labels, edges)


def random_connected_graph(
    n: int, seed: int, extra_edge_prob: float = 0.2, lengths: tuple[float, float] = (0.5, 2.0)
) -> WeightedGraph:
    """A random tree plus independent extra edges."""
    base = random_tree(n, seed, lengths)
    rng = np.random.default_rng([seed, 1])
    have = {(min(u, v), max(u, v)) for u, v, _ in base.edges}
    edges = list(base.edges)
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in have and rng.random() < extra_edge_prob:
            edges.append((u, v, float(rng.uniform(*lengths))))
    return WeightedGraph(base.labels, tuple(edges))


def random_euclidean(n: int, seed: int, dim: int = 2) -> FiniteMetricSpace:
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, dim))
    d = np.linalg.norm(x[:, None, :] - x[None, :, :], axis=-1)
    np.fill_diagonal(d, 0.0)
    return build_space([f"p{i}" for i in range(n)], d)


def perturbed_tree_metric(n: int, seed: int, noise: float = 0.1) -> FiniteMetricSpace:
    """Path metric of a random tree with multiplicative noise on each pair,
    then closed under shortest paths so the triangle inequality holds."""
    from scipy.sparse.csgraph import shortest_path

    g = random_tree(n, seed)
    rng = np.random.default_rng([seed, 2])
    d = np.array(g.distances)
    f = rng.uniform(1.0, 1.0 + noise, size=d.shape)
    f = np.triu(f, 1)
    d = d * (f + f.T + np.eye(n))
    d = shortest_path(d, method="FW", directed=False)
    return build_space(g.labels, d)
