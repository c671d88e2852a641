"""Brute-force reference computations, deliberately independent of the library."""

import itertools

import numpy as np


def cycle_matrix(n, length=1.0):
    return [[length * min(abs(i - j), n - abs(i - j)) for j in range(n)] for i in range(n)]


def floyd_warshall(n, edges):
    inf = float("inf")
    d = [[0.0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v, w in edges:
        d[u][v] = d[v][u] = min(d[u][v], w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def four_point_delta(d):
    """Max over all ordered quadruples of half the top-two gap of the pairing sums."""
    n = len(d)
    best = 0.0
    for x, y, z, p in itertools.product(range(n), repeat=4):
        s = sorted([d[x][y] + d[z][p], d[x][z] + d[y][p], d[x][p] + d[y][z]])
        best = max(best, (s[2] - s[1]) / 2)
    return best


def gromov_delta(d):
    """Max over all ordered quadruples of min((x,y)_p,(y,z)_p) - (x,z)_p."""
    n = len(d)

    def gp(a, b, p):
        return (d[a][p] + d[b][p] - d[a][b]) / 2

    best = 0.0
    for x, y, z, p in itertools.product(range(n), repeat=4):
        best = max(best, min(gp(x, y, p), gp(y, z, p)) - gp(x, z, p))
    return best


def shortest_paths_lex(n, edges, x, y, tol=1e-9):
    """Lexicographically smallest shortest vertex path, by exhaustive DFS."""
    d = floyd_warshall(n, edges)
    adj = {i: {} for i in range(n)}
    for u, v, w in edges:
        adj[u][v] = adj[v][u] = w
    found = []

    def walk(path, length):
        u = path[-1]
        if u == y:
            if abs(length - d[x][y]) <= tol:
                found.append(list(path))
            return
        for v, w in adj[u].items():
            if v not in path and length + w + d[v][y] <= d[x][y] + tol:
                walk(path + [v], length + w)

    walk([x], 0.0)
    return min(found)


def _sample_side(path, adj, r):
    """(u, v, s, w) locations every r along a vertex path, plus each vertex."""
    out = []
    for a, b in zip(path, path[1:]):
        w = adj[a][b]
        k = 0
        while k * r < w:
            out.append((a, b, k * r, w))
            k += 1
    out.append((path[-1], path[-1], 0.0, 0.0))
    return out


def _pairwise_dist(P, Q, d):
    """Distances between two arrays of (u, v, s, w) locations."""
    d = np.asarray(d)
    pu, pv, ps, pw = (P[:, k] for k in range(4))
    qu, qv, qs, qw = (Q[:, k] for k in range(4))
    pu, pv, qu, qv = (a.astype(int) for a in (pu, pv, qu, qv))
    best = np.full((len(P), len(Q)), np.inf)
    for a, oa in ((pu, ps), (pv, pw - ps)):
        for b, ob in ((qu, qs), (qv, qw - qs)):
            best = np.minimum(best, oa[:, None] + d[a][:, b] + ob[None, :])
    same = (pu != pv)[:, None] & (qu != qv)[None, :]
    fwd = same & (pu[:, None] == qu[None, :]) & (pv[:, None] == qv[None, :])
    rev = same & (pu[:, None] == qv[None, :]) & (pv[:, None] == qu[None, :])
    best = np.where(fwd, np.minimum(best, np.abs(ps[:, None] - qs[None, :])), best)
    best = np.where(rev, np.minimum(best, np.abs(ps[:, None] - (qw - qs)[None, :])), best)
    return best


def thin_sampled(n, edges, r):
    """Thinness over canonical triangles, every side sampled at step r and
    distances taken to the sampled points of the other two sides."""
    d = floyd_warshall(n, edges)
    adj = {i: {} for i in range(n)}
    for u, v, w in edges:
        adj[u][v] = adj[v][u] = w
    sides = {}
    for a, b in itertools.combinations(range(n), 2):
        sides[a, b] = np.array(_sample_side(shortest_paths_lex(n, edges, a, b), adj, r))
    best = 0.0
    for x, y, z in itertools.combinations(range(n), 3):
        tri = [sides[x, y], sides[x, z], sides[y, z]]
        for i in range(3):
            others = np.vstack([tri[(i + 1) % 3], tri[(i + 2) % 3]])
            for lo in range(0, len(tri[i]), 256):
                chunk = _pairwise_dist(tri[i][lo : lo + 256], others, d)
                best = max(best, float(chunk.min(axis=1).max()))
    return best
