"""Weighted trees: unique segments, betweenness, gluing and projections."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotATree, NotConvex, ParameterOutOfRange
from .geodesic_graph import WeightedGraph, build_graph
from .metric_space import DEFAULT_TOL, FiniteMetricSpace, build_space


@dataclass(frozen=True, eq=False)
class MetricTree:
    """A connected acyclic :class:`WeightedGraph`, rooted at vertex 0 for queries."""

    graph: WeightedGraph

    def __post_init__(self):
        g = self.graph
        if g.n == 0:
            raise NotATree("a tree needs at least one vertex")
        if len(g.edges) != g.n - 1:
            raise NotATree(f"{g.n} vertices need {g.n - 1} edges, got {len(g.edges)}")
        if not g.is_connected():
            raise NotATree("tree is not connected")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.graph.labels

    @property
    def edges(self) -> tuple[tuple[int, int, float], ...]:
        return self.graph.edges

    @property
    def n(self) -> int:
        return self.graph.n

    def index(self, v) -> int:
        return self.graph.index(v)

    def degree(self, v: int) -> int:
        return len(self.graph.adjacency[v])

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.degree(v) <= 1]

    @cached_property
    def _rooted(self):
        adj = self.graph.adjacency
        parent = [-1] * self.n
        depth = [0] * self.n
        height = [0.0] * self.n
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    height[v] = height[u] + adj[u][v]
                    queue.append(v)
        return parent, depth, height

    def vertex_path(self, a: int, b: int) -> list[int]:
        """The unique vertex path from ``a`` to ``b``."""
        parent, depth, _ = self._rooted
        left, right = [a], [b]
        while depth[left[-1]] > depth[right[-1]]:
            left.append(parent[left[-1]])
        while depth[right[-1]] > depth[left[-1]]:
            right.append(parent[right[-1]])
        while left[-1] != right[-1]:
            left.append(parent[left[-1]])
            right.append(parent[right[-1]])
        return left + right[-2::-1]

    def vertex_distance(self, a: int, b: int) -> float:
        path = self.vertex_path(a, b)
        adj = self.graph.adjacency
        return float(sum(adj[u][v] for u, v in zip(path, path[1:])))

    @cached_property
    def distances(self) -> np.ndarray:
        return self.graph.distances


def tree_from_graph(graph: WeightedGraph) -> MetricTree:
    return MetricTree(graph)


def build_tree(labels: Sequence, edges) -> MetricTree:
    return MetricTree(build_graph(labels, edges))


@dataclass(frozen=True)
class TreePoint:
    """A vertex (``u == v``, ``offset == 0``) or a point ``offset`` along edge ``u-v``.

    Edge points are normalised so that ``u < v`` and ``0 < offset < length``.
    """

    u: int
    v: int
    offset: float = 0.0

    @property
    def is_vertex(self) -> bool:
        return self.u == self.v


def vertex_point(tree: MetricTree, v) -> TreePoint:
    v = tree.index(v)
    return TreePoint(v, v, 0.0)


def edge_point(tree: MetricTree, u, v, offset: float, tol: float = DEFAULT_TOL) -> TreePoint:
    """The point ``offset`` from ``u`` along edge ``u-v``, snapped to a vertex at the ends."""
    u, v = tree.index(u), tree.index(v)
    adj = tree.graph.adjacency
    if v not in adj[u]:
        raise ParameterOutOfRange(f"{tree.labels[u]!r}-{tree.labels[v]!r} is not an edge")
    w = adj[u][v]
    eps = tol * max(1.0, w)
    if offset < -eps or offset > w + eps:
        raise ParameterOutOfRange(f"offset {offset} outside edge of length {w}")
    if offset <= eps:
        return TreePoint(u, u, 0.0)
    if offset >= w - eps:
        return TreePoint(v, v, 0.0)
    if u > v:
        u, v, offset = v, u, w - offset
    return TreePoint(u, v, float(offset))


def _ends(tree: MetricTree, p: TreePoint):
    """``[(vertex, distance from p)]`` for the endpoints of p's host edge."""
    if p.is_vertex:
        return [(p.u, 0.0)]
    w = tree.graph.adjacency[p.u][p.v]
    return [(p.u, p.offset), (p.v, w - p.offset)]


def tree_distance(tree: MetricTree, p: TreePoint, q: TreePoint) -> float:
    if not p.is_vertex and not q.is_vertex and (p.u, p.v) == (q.u, q.v):
        return abs(p.offset - q.offset)
    D = tree.distances
    return float(min(a + D[x, y] + b for x, a in _ends(tree, p) for y, b in _ends(tree, q)))


def tree_segment(tree: MetricTree, p: TreePoint, q: TreePoint) -> list[TreePoint]:
    """Points along the unique segment from ``p`` to ``q``: the endpoints and
    every vertex strictly between them, in order."""
    if p == q:
        return [p]
    if not p.is_vertex and not q.is_vertex and (p.u, p.v) == (q.u, q.v):
        return [p, q]
    D = tree.distances
    _, x, y = min((a + D[x, y] + b, x, y) for x, a in _ends(tree, p) for y, b in _ends(tree, q))
    inner = [TreePoint(v, v) for v in tree.vertex_path(x, y)]
    if p.is_vertex:
        inner = inner[1:]
    if q.is_vertex:
        inner = inner[:-1]
    return [p, *inner, q]


def betweenness_set(tree: MetricTree, x, y, tol: float = DEFAULT_TOL) -> frozenset[int]:
    """Vertices ``z`` with ``d(x,z) + d(z,y) = d(x,y)``."""
    x, y = tree.index(x), tree.index(y)
    D = tree.distances
    dxy = D[x, y]
    return frozenset(
        z for z in range(tree.n) if abs(D[x, z] + D[z, y] - dxy) <= tol * max(1.0, dxy)
    )


def _check_convex(tree: MetricTree, C: Iterable) -> frozenset[int]:
    verts = frozenset(tree.index(c) for c in C)
    if not verts:
        raise NotConvex("empty vertex set")
    adj = tree.graph.adjacency
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in verts and v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != len(verts):
        raise NotConvex(f"vertex set {sorted(tree.labels[c] for c in verts)} does not span a subtree")
    return verts


def _in_subtree(p: TreePoint, C: frozenset[int]) -> bool:
    if p.is_vertex:
        return p.u in C
    return p.u in C and p.v in C


def project_onto_subtree(tree: MetricTree, p: TreePoint, C: Iterable) -> TreePoint:
    """Nearest point to ``p`` in the subtree spanned by the vertex set ``C``.

    Walks the segment from ``p`` toward a vertex of ``C`` and stops at the
    first point that belongs to the subtree.
    """
    C = _check_convex(tree, C)
    if _in_subtree(p, C):
        return p
    for q in tree_segment(tree, p, TreePoint(min(C), min(C))):
        if _in_subtree(q, C):
            return q
    raise AssertionError("segment never reached the target subtree")  # pragma: no cover


def project_onto_segment(tree: MetricTree, p: TreePoint, x, y) -> TreePoint:
    return project_onto_subtree(tree, p, betweenness_set(tree, x, y))


def check_gluing(tree: MetricTree, y, x, z, tol: float = DEFAULT_TOL) -> bool:
    """If ``[y,x]`` and ``[x,z]`` meet only at ``x``, their union must be ``[y,z]``.

    Vacuously true when the segments share more than ``x``.
    """
    y, x, z = tree.index(y), tree.index(x), tree.index(z)
    yx, xz = tree.vertex_path(y, x), tree.vertex_path(x, z)
    if set(yx) & set(xz) != {x}:
        return True
    yz = tree.vertex_path(y, z)
    if yx + xz[1:] != yz:
        return False
    D = tree.distances
    return bool(abs(D[y, x] + D[x, z] - D[y, z]) <= tol * max(1.0, D[y, z]))


def nonexpansiveness_probe(tree: MetricTree, C: Iterable, pairs) -> float:
    """Largest ``d(P(p), P(q)) / d(p, q)`` over the given point pairs."""
    C = _check_convex(tree, C)
    worst = 0.0
    for p, q in pairs:
        dpq = tree_distance(tree, p, q)
        if not dpq > 0:
            raise ParameterOutOfRange("probe pairs must be distinct points")
        ratio = tree_distance(tree, project_onto_subtree(tree, p, C), project_onto_subtree(tree, q, C)) / dpq
        worst = max(worst, ratio)
    return worst


def random_point(tree: MetricTree, rng: np.random.Generator, vertex_prob: float = 0.2) -> TreePoint:
    """A random vertex, or a uniform point on a random edge."""
    if not tree.edges or rng.random() < vertex_prob:
        v = int(rng.integers(tree.n))
        return TreePoint(v, v)
    u, v, w = tree.edges[int(rng.integers(len(tree.edges)))]
    return edge_point(tree, u, v, float(rng.uniform(0.0, w)))


def random_subtree(tree: MetricTree, rng: np.random.Generator) -> frozenset[int]:
    """Vertex set of a random connected subtree (grown from a random vertex)."""
    start = int(rng.integers(tree.n))
    size = int(rng.integers(1, tree.n + 1))
    verts = {start}
    frontier = set(tree.graph.adjacency[start])
    while len(verts) < size and frontier:
        v = sorted(frontier)[int(rng.integers(len(frontier)))]
        verts.add(v)
        frontier.discard(v)
        frontier |= set(tree.graph.adjacency[v]) - verts
    return frozenset(verts)


def leaf_metric(tree: MetricTree, labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Path metric restricted to ``labels`` (default: all vertices)."""
    if labels is None:
        return build_space(tree.labels, tree.distances)
    idx = [tree.index(lab) for lab in labels]
    if len(set(idx)) != len(idx):
        raise DimensionMismatch("repeated label")
    return build_space([tree.labels[i] for i in idx], tree.distances[np.ix_(idx, idx)])
