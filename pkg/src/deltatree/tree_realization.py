"""Realise a 0-hyperbolic finite metric as a weighted tree with Steiner vertices."""

from __future__ import annotations

import numpy as np

from .errors import MissingLabel, NegativeEdge, NotZeroHyperbolic
from .geodesic_graph import WeightedGraph
from .hyperbolicity import delta_four_point
from .metric_space import FiniteMetricSpace
from .metric_tree import MetricTree

REALIZE_TOL = 1e-7


class _GrowingTree:
    """Mutable adjacency used during incremental construction."""

    def __init__(self):
        self.adj: list[dict[int, float]] = []

    def add_vertex(self) -> int:
        self.adj.append({})
        return len(self.adj) - 1

    def connect(self, a, b, w):
        self.adj[a][b] = w
        self.adj[b][a] = w

    def disconnect(self, a, b):
        del self.adj[a][b]
        del self.adj[b][a]

    def path(self, a, b) -> list[int]:
        prev = {a: a}
        stack = [a]
        while stack:
            u = stack.pop()
            if u == b:
                break
            for v in self.adj[u]:
                if v not in prev:
                    prev[v] = u
                    stack.append(v)
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def locate(self, a, b, s, eps) -> int:
        """Vertex at arc length ``s`` from ``a`` toward ``b``, splitting an edge if needed."""
        path = self.path(a, b)
        walked = 0.0
        for u, v in zip(path, path[1:]):
            w = self.adj[u][v]
            if s <= walked + eps:
                return u
            if s < walked + w - eps:
                mid = self.add_vertex()
                self.disconnect(u, v)
                self.connect(u, mid, s - walked)
                self.connect(mid, v, walked + w - s)
                return mid
            walked += w
        return path[-1]


def realize_tree(space: FiniteMetricSpace, tol: float = REALIZE_TOL) -> MetricTree:
    """Build a tree whose path metric restricted to the input points is ``space``.

    Points are inserted in input order. A new point ``w`` is hung off the
    segment ``[x, y]`` maximising the Gromov product ``(y, w)_x``, at arc
    length ``(y, w)_x`` from ``x``, by an edge of length ``d(x,w) - (y,w)_x``.
    Steiner vertices (labelled ``_s0``, ``_s1``, ...) appear where an edge is
    split. Degree-2 Steiner vertices are kept.
    """
    wit = delta_four_point(space)
    if wit.delta > tol:
        raise NotZeroHyperbolic(wit.delta, wit.quadruple, space.labels)

    d = space.dist
    n = space.n
    eps = tol * max(1.0, float(d.max()))
    t = _GrowingTree()
    where = [t.add_vertex()]
    if n > 1:
        where.append(t.add_vertex())
        if not d[0, 1] > eps:
            raise NegativeEdge(f"points {space.labels[0]!r} and {space.labels[1]!r} coincide")
        t.connect(where[0], where[1], float(d[0, 1]))

    for w in range(2, n):
        # prod[x, y] = (y, w)_x; argmax takes the lexicographically first pair
        prod = 0.5 * (d[:w, w][:, None] + d[:w, :w] - d[:w, w][None, :])
        np.fill_diagonal(prod, -np.inf)
        bx, by = divmod(int(np.argmax(prod)), w)
        best = float(prod[bx, by])
        pos = min(max(best, 0.0), float(d[bx, by]))
        pendant = float(d[bx, w]) - pos
        if pendant < -eps:
            raise NegativeEdge(
                f"attaching {space.labels[w]!r} needs an edge of length {pendant}; "
                "the input is not a tree metric at this tolerance"
            )
        host = t.locate(where[bx], where[by], pos, eps)
        if pendant <= eps:
            if host in where:
                raise NegativeEdge(
                    f"point {space.labels[w]!r} coincides with {space.labels[where.index(host)]!r}"
                )
            where.append(host)
        else:
            leaf = t.add_vertex()
            t.connect(host, leaf, pendant)
            where.append(leaf)

    labels: list[str | None] = [None] * len(t.adj)
    for i, v in enumerate(where):
        labels[v] = space.labels[i]
    taken = set(space.labels)
    k = 0
    for v in range(len(labels)):
        if labels[v] is None:
            while f"_s{k}" in taken:
                k += 1
            labels[v] = f"_s{k}"
            k += 1
    edges = tuple(
        (u, v, w) for u in range(len(t.adj)) for v, w in sorted(t.adj[u].items()) if u < v
    )
    return MetricTree(WeightedGraph(tuple(labels), edges))


def verify_embedding(tree: MetricTree, space: FiniteMetricSpace) -> float:
    """Largest absolute difference between tree distances and ``space``."""
    missing = [lab for lab in space.labels if lab not in tree.labels]
    if missing:
        raise MissingLabel(f"labels not in tree: {missing}")
    idx = [tree.index(lab) for lab in space.labels]
    D = tree.distances
    err = 0.0
    for a in range(space.n):
        for b in range(a + 1, space.n):
            err = max(err, abs(float(D[idx[a], idx[b]]) - float(space.dist[a, b])))
    return err
