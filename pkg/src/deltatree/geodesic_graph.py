"""Weighted graphs as discretised geodesic spaces.

Points of the geometric realisation are either vertices or positions along an
edge. Canonical geodesics are the lexicographically smallest shortest vertex
sequences, which makes every triangle (and hence the thinness value)
deterministic.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from .errors import DimensionMismatch, Disconnected, NonPositiveResolution, ParameterOutOfRange
from .hyperbolicity import delta_gromov, relation
from .metric_space import DEFAULT_TOL, FiniteMetricSpace, build_space


def _close(a, b, tol=DEFAULT_TOL):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected graph with positive edge lengths.

    ``edges`` holds ``(u, v, length)`` with vertex indices. Connectivity is
    not required at construction; operations needing it raise
    :class:`Disconnected`.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise DimensionMismatch("vertex labels must be distinct")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DimensionMismatch(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise ValueError(f"self-loop at {self.labels[u]!r}")
            if not w > 0 or not np.isfinite(w):
                raise ValueError(f"edge {self.labels[u]!r}-{self.labels[v]!r} has nonpositive length {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {self.labels[u]!r}-{self.labels[v]!r}")
            seen.add(key)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, v: int | str) -> int:
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if not 0 <= int(v) < self.n:
                raise ParameterOutOfRange(f"vertex index {v} out of range")
            return int(v)
        try:
            return self.labels.index(str(v))
        except ValueError:
            raise ParameterOutOfRange(f"unknown vertex {v!r}") from None

    @cached_property
    def adjacency(self) -> list[dict[int, float]]:
        adj: list[dict[int, float]] = [{} for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def edge_length(self, u: int, v: int) -> float:
        return self.adjacency[u][v]

    @cached_property
    def _csr(self):
        if not self.edges:
            return csr_matrix((self.n, self.n))
        u, v, w = zip(*self.edges)
        return csr_matrix((w, (u, v)), shape=(self.n, self.n))

    def components(self) -> list[list[int]]:
        _, lab = connected_components(self._csr, directed=False)
        groups: dict[int, list[int]] = {}
        for i, c in enumerate(lab):
            groups.setdefault(int(c), []).append(i)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs shortest-path lengths; raises if disconnected."""
        comps = self.components()
        if len(comps) > 1:
            raise Disconnected([[self.labels[i] for i in c] for c in comps])
        D = dijkstra(self._csr, directed=False)
        D.setflags(write=False)
        return D


def build_graph(labels: Sequence, edges) -> WeightedGraph:
    """Build a graph from edges given by label or index."""
    labels = tuple(str(lab) for lab in labels)
    pos = {lab: i for i, lab in enumerate(labels)}

    def resolve(v):
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return int(v)
        try:
            return pos[str(v)]
        except KeyError:
            raise DimensionMismatch(f"edge references unknown vertex {v!r}") from None

    return WeightedGraph(labels, tuple((resolve(u), resolve(v), float(w)) for u, v, w in edges))


def all_pairs_shortest(graph: WeightedGraph) -> FiniteMetricSpace:
    return build_space(graph.labels, graph.distances)


@dataclass(frozen=True)
class Geodesic:
    vertices: tuple[int, ...]
    cumulative: tuple[float, ...]

    @property
    def length(self) -> float:
        return self.cumulative[-1]

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (min(a, b), max(a, b)) for a, b in zip(self.vertices, self.vertices[1:])
        )


def canonical_geodesic(graph: WeightedGraph, x, y, tol: float = DEFAULT_TOL) -> Geodesic:
    """Lexicographically smallest shortest path from ``x`` to ``y``.

    Built greedily: from the current vertex, step to the smallest neighbour
    that still lies on a shortest path to ``y``.
    """
    x, y = graph.index(x), graph.index(y)
    D = graph.distances
    path, cum = [x], [0.0]
    cur = x
    while cur != y:
        for v in sorted(graph.adjacency[cur]):
            w = graph.adjacency[cur][v]
            if _close(D[x, cur] + w + D[v, y], D[x, y], tol) and v not in path:
                break
        else:  # pragma: no cover - unreachable for a connected graph
            raise Disconnected([[graph.labels[x]], [graph.labels[y]]])
        cum.append(cum[-1] + w)
        path.append(v)
        cur = v
    return Geodesic(tuple(path), tuple(cum))


def interval_set(graph: WeightedGraph, x, y, tol: float = DEFAULT_TOL) -> frozenset[int]:
    """Vertices ``v`` with ``d(x,v) + d(v,y) = d(x,y)``: the union of all geodesics."""
    x, y = graph.index(x), graph.index(y)
    D = graph.distances
    return frozenset(v for v in range(graph.n) if _close(D[x, v] + D[v, y], D[x, y], tol))


@dataclass(frozen=True)
class GeodesicPoint:
    """The point at arc length ``t`` along ``geodesic``."""

    geodesic: Geodesic = field(repr=False)
    t: float

    def location(self) -> tuple[int, int, float, float]:
        """``(u, v, s, w)``: the point sits ``s`` along edge ``u-v`` of length ``w``.

        Vertices are reported as ``(u, u, 0.0, 0.0)``.
        """
        g = self.geodesic
        cum = g.cumulative
        k = bisect.bisect_right(cum, self.t) - 1
        if k >= len(cum) - 1:
            v = g.vertices[-1]
            return v, v, 0.0, 0.0
        s = self.t - cum[k]
        w = cum[k + 1] - cum[k]
        u, v = g.vertices[k], g.vertices[k + 1]
        if s <= DEFAULT_TOL * max(1.0, w):
            return u, u, 0.0, 0.0
        if w - s <= DEFAULT_TOL * max(1.0, w):
            return v, v, 0.0, 0.0
        return u, v, s, w


def point_at(geodesic: Geodesic, t: float, tol: float = DEFAULT_TOL) -> GeodesicPoint:
    L = geodesic.length
    if t < -tol * max(1.0, L) or t > L + tol * max(1.0, L):
        raise ParameterOutOfRange(f"t={t} outside [0, {L}]")
    return GeodesicPoint(geodesic, min(max(t, 0.0), L))


def _dist_to_vertices(loc, D) -> np.ndarray:
    """Distances from a located point to every vertex."""
    u, v, s, w = loc
    if u == v:
        return D[u]
    return np.minimum(s + D[u], (w - s) + D[v])


def dist_between_points(p: GeodesicPoint, q: GeodesicPoint, graph: WeightedGraph) -> float:
    D = graph.distances
    pu, pv, ps, pw = p.location()
    qu, qv, qs, qw = q.location()
    best = np.inf
    for a, oa in ((pu, ps), (pv, pw - ps)):
        for b, ob in ((qu, qs), (qv, qw - qs)):
            best = min(best, oa + D[a, b] + ob)
    if pu != pv and qu != qv and {pu, pv} == {qu, qv}:
        qs_from_pu = qs if qu == pu else qw - qs
        best = min(best, abs(ps - qs_from_pu))
    return float(best)


@dataclass(frozen=True)
class TripodPoints:
    """``a_x`` on [y,z], ``a_y`` on [x,z], ``a_z`` on [x,y]."""

    a_x: GeodesicPoint
    a_y: GeodesicPoint
    a_z: GeodesicPoint


def _side(graph, a, b):
    """Canonical side between ``a`` and ``b`` and whether it runs from ``a``."""
    if a <= b:
        return canonical_geodesic(graph, a, b), True
    return canonical_geodesic(graph, b, a), False


def _point_from(graph, a, b, offset):
    """Point on the canonical side [a,b] at distance ``offset`` from ``a``."""
    g, forward = _side(graph, a, b)
    t = offset if forward else g.length - offset
    return point_at(g, min(max(t, 0.0), g.length))


def _products(D, x, y, z):
    """Gromov products ``(y,z)_x, (x,z)_y, (x,y)_z``."""
    return (
        0.5 * (D[x, y] + D[x, z] - D[y, z]),
        0.5 * (D[y, x] + D[y, z] - D[x, z]),
        0.5 * (D[z, x] + D[z, y] - D[x, y]),
    )


def tripod_points(graph: WeightedGraph, x, y, z) -> TripodPoints:
    """Tripod points of the canonical triangle on ``x, y, z``.

    Sides are the canonical geodesics between the smaller and larger vertex
    index, so each side is shared by every triangle that uses it.
    """
    x, y, z = graph.index(x), graph.index(y), graph.index(z)
    gx, gy, gz = _products(graph.distances, x, y, z)
    return TripodPoints(
        a_x=_point_from(graph, y, z, gy),
        a_y=_point_from(graph, x, z, gx),
        a_z=_point_from(graph, x, y, gx),
    )


@dataclass(frozen=True)
class ThinResult:
    """Thinness value, the triangle ``(x, y, z)`` whose side ``[x,y]`` attains
    it, and the attaining point on that side."""

    delta: float
    triple: tuple[int, int, int]
    point: GeodesicPoint | None
    resolution: float


class _SideSamples:
    """Sample grid of one side, with each sample's host edge precomputed."""

    def __init__(self, g: Geodesic, r: float):
        self.g = g
        self.cum = np.asarray(g.cumulative)
        self.verts = np.asarray(g.vertices)
        self.edge_keys = [(min(a, b), max(a, b)) for a, b in zip(g.vertices, g.vertices[1:])]
        L = g.length
        grid = np.arange(0.0, L, r) if L > 0 else np.zeros(0)
        self.ts = np.unique(np.clip(np.concatenate([grid, self.cum]), 0.0, L))
        self.k, self.u, self.v, self.s, self.w = self._locate(self.ts)

    def _locate(self, ts):
        cum, verts = self.cum, self.verts
        k = np.clip(np.searchsorted(cum, ts, side="right") - 1, 0, max(len(cum) - 2, 0))
        if len(cum) == 1:
            z = np.zeros_like(ts)
            return k, verts[k], verts[k], z, z
        return k, verts[k], verts[k + 1], ts - cum[k], cum[k + 1] - cum[k]

    def distances(self, dmin, covered, extra_t):
        """Distances to a target set from every sample and from ``extra_t``.

        ``dmin[v]`` is the distance from vertex ``v`` to the target set. The
        nearest point of a side is always one of its vertices unless the
        sample sits on an edge the side itself contains.
        """
        ts = np.append(self.ts, extra_t)
        k, u, v, s, w = (np.append(a, b) for a, b in zip(
            (self.k, self.u, self.v, self.s, self.w), self._locate(np.array([extra_t]))
        ))
        out = np.minimum(s + dmin[u], (w - s) + dmin[v])
        if self.edge_keys:
            edge_covered = np.array([key in covered for key in self.edge_keys])
            out[edge_covered[k]] = 0.0
        return ts, out


def _check_resolution(r):
    if not r > 0:
        raise NonPositiveResolution(f"resolution must be positive, got {r}")


def delta_thin(graph: WeightedGraph, resolution: float = 0.05) -> ThinResult:
    """Thinness of canonical geodesic triangles, sampled every ``resolution``.

    For every vertex triple and each of its three sides, points of the side
    (its vertices, multiples of ``resolution`` and the tripod point) are
    measured against the union of the other two sides. Distances from a
    sample to a side are exact, so the only error is the sampling of the
    side itself, at most ``resolution / 2``.
    """
    _check_resolution(resolution)
    D = graph.distances
    n = graph.n
    samplers: dict[tuple[int, int], _SideSamples] = {}

    def side(a, b):
        key = (min(a, b), max(a, b))
        if key not in samplers:
            samplers[key] = _SideSamples(canonical_geodesic(graph, *key), resolution)
        return samplers[key]

    best = ThinResult(0.0, (0, 0, 0), None, resolution)
    for tri in itertools.combinations(range(n), 3):
        for x, y, z in ((tri[0], tri[1], tri[2]), (tri[0], tri[2], tri[1]), (tri[1], tri[2], tri[0])):
            sampler = side(x, y)
            g = sampler.g
            others = (side(x, z).g, side(z, y).g)
            targets = sorted(set(others[0].vertices) | set(others[1].vertices))
            dmin = D[:, targets].min(axis=1)
            covered = others[0].edge_set | others[1].edge_set
            tripod = 0.5 * (D[x, y] + D[x, z] - D[y, z])
            extra = tripod if g.vertices[0] == x else g.length - tripod
            ts, vals = sampler.distances(dmin, covered, min(max(extra, 0.0), g.length))
            m = int(np.argmax(vals))
            if vals[m] > best.delta:
                best = ThinResult(float(vals[m]), (x, y, z), GeodesicPoint(g, float(ts[m])), resolution)
    return best


def delta_thin_exact(graph: WeightedGraph) -> float:
    """Exact thinness of the canonical triangles.

    Along an edge ``u-v`` of a side, the distance to the other two sides is
    ``min(s + A, w - s + B)`` with ``A``, ``B`` the distances from ``u``, ``v``
    to those sides, so its maximum over the edge is ``(w + A + B) / 2``
    clipped to the edge. Independent of :func:`delta_thin`; used as its oracle.
    """
    D = graph.distances
    best = 0.0
    for x, y, z in itertools.permutations(range(graph.n), 3):
        if x > y:
            continue
        g = canonical_geodesic(graph, x, y)
        others = [canonical_geodesic(graph, *sorted((x, z))), canonical_geodesic(graph, *sorted((y, z)))]
        targets = [v for o in others for v in o.vertices]
        covered = set().union(*(o.edge_set for o in others))
        for a, b in zip(g.vertices, g.vertices[1:]):
            if (min(a, b), max(a, b)) in covered:
                continue
            w = graph.edge_length(a, b)
            A = min(D[a, t] for t in targets)
            B = min(D[b, t] for t in targets)
            s = min(max((w + B - A) / 2, 0.0), w)
            best = max(best, min(s + A, w - s + B))
        for a in g.vertices:
            best = max(best, min(D[a, t] for t in targets))
    return float(best)


def max_tripod_spread(graph: WeightedGraph) -> tuple[float, tuple[int, int, int]]:
    """Largest pairwise distance among the tripod points of any vertex triple."""
    best, wit = 0.0, (0, 0, 0)
    for tri in itertools.combinations(range(graph.n), 3):
        tp = tripod_points(graph, *tri)
        pts = (tp.a_x, tp.a_y, tp.a_z)
        spread = max(dist_between_points(p, q, graph) for p, q in itertools.combinations(pts, 2))
        if spread > best:
            best, wit = spread, tri
    return best, wit


def subdivide(graph: WeightedGraph, k: int) -> WeightedGraph:
    """Split every edge into ``k + 1`` equal pieces.

    The geometric realisation is unchanged; only the vertex set grows.
    """
    if k < 0:
        raise ParameterOutOfRange(f"subdivision count must be >= 0, got {k}")
    if k == 0:
        return graph
    labels = list(graph.labels)
    taken = set(labels)
    edges = []
    for u, v, w in graph.edges:
        chain = [u]
        for i in range(1, k + 1):
            name = f"{graph.labels[u]}~{graph.labels[v]}#{i}"
            while name in taken:
                name += "'"
            taken.add(name)
            labels.append(name)
            chain.append(len(labels) - 1)
        chain.append(v)
        edges.extend((a, b, w / (k + 1)) for a, b in zip(chain, chain[1:]))
    return WeightedGraph(tuple(labels), tuple(edges))


def thin_relations(
    graph: WeightedGraph, resolution: float = 0.05, tol: float = DEFAULT_TOL, subdivisions: int = 0
):
    """Factor-3 relations between the Gromov-product delta and thinness.

    The Gromov-product delta is taken on the vertex path metric, after
    splitting each edge into ``subdivisions + 1`` pieces. With no
    subdivision the vertex metric can underestimate the delta of the whole
    metric graph (a unit triangle has vertex delta 0 but thinness 1/2), so
    ``thin_le_3_gromov`` may fail on graphs with short cycles.

    Returns ``(checks, delta_gromov_witness, thin_result)``.
    """
    _check_resolution(resolution)
    r = resolution
    d3 = delta_gromov(all_pairs_shortest(subdivide(graph, subdivisions)))
    thin = delta_thin(graph, r)
    spread, _ = max_tripod_spread(graph)
    checks = (
        relation("gromov_le_3_thin", d3.delta, 3 * thin.delta + 3 * r, tol),
        relation("thin_le_3_gromov", thin.delta, 3 * d3.delta + r, tol),
        relation("tripod_le_2_thin", spread, 2 * thin.delta + 2 * r, tol),
    )
    return checks, d3, thin
