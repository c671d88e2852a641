"""Hyperbolicity constants from the four-point condition and from Gromov products.

Both functions return the *least* admissible delta together with a witness
quadruple. They use separate compiled kernels so that agreement between them
is a genuine cross-check rather than a tautology.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NegativeDelta
from .metric_space import DEFAULT_TOL, FiniteMetricSpace, diameter, subspace


@dataclass(frozen=True)
class DeltaWitness:
    """A delta value and the quadruple attaining it.

    For the four-point form the quadruple is a sorted 4-subset. For the
    Gromov-product form it is the ordered ``(x, y, z, p)`` in
    ``(x,z)_p >= min((x,y)_p, (y,z)_p) - delta``.
    """

    delta: float
    quadruple: tuple[int, int, int, int]


@dataclass(frozen=True)
class RelationCheck:
    name: str
    holds: bool
    slack: float
    lhs: float = field(default=float("nan"), compare=False)
    rhs: float = field(default=float("nan"), compare=False)


def relation(name: str, lhs: float, rhs: float, tol: float) -> RelationCheck:
    """Check ``lhs <= rhs + tol``; slack is ``rhs - lhs``."""
    return RelationCheck(name, bool(lhs <= rhs + tol), float(rhs - lhs), float(lhs), float(rhs))


@dataclass(frozen=True)
class HyperbolicityReport:
    delta_four_point: DeltaWitness
    delta_gromov: DeltaWitness
    diameter: float
    checks: tuple[RelationCheck, ...]
    delta_thin: object | None = None

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)


def four_point_value(space: FiniteMetricSpace, quad) -> float:
    """Half the gap between the two largest pairing sums of ``quad``."""
    x, y, z, p = (space.index(q) for q in quad)
    d = space.dist
    sums = sorted([d[x, y] + d[z, p], d[x, z] + d[y, p], d[x, p] + d[y, z]])
    return 0.5 * float(sums[2] - sums[1])


def gromov_value(space: FiniteMetricSpace, quad) -> float:
    """``min((x,y)_p, (y,z)_p) - (x,z)_p`` clamped at zero."""
    x, y, z, p = (space.index(q) for q in quad)
    d = space.dist

    def gp(a, b):
        return 0.5 * (d[a, p] + d[b, p] - d[a, b])

    return max(0.0, float(min(gp(x, y), gp(y, z)) - gp(x, z)))


def _scan(space: FiniteMetricSpace, kernel, workers: int) -> DeltaWitness:
    n = space.n
    if n < 4:
        return DeltaWitness(0.0, (0, 0, 0, 0))
    d = np.ascontiguousarray(space.dist, dtype=np.float64)
    rows = np.arange(n - 3, dtype=np.int64)
    deltas = np.empty(rows.size)
    wits = np.empty((rows.size, 4), dtype=np.int64)

    def run(chunk):
        r = rows[chunk]
        out_d = np.empty(r.size)
        out_w = np.empty((r.size, 4), dtype=np.int64)
        kernel(d, r, out_d, out_w)
        deltas[chunk] = out_d
        wits[chunk] = out_w

    workers = max(1, int(workers))
    if workers == 1:
        run(slice(None))
    else:
        # strided chunks balance the triangular workload
        chunks = [slice(w, None, workers) for w in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, chunks))

    # rows are in ascending first index, so argmax keeps the smallest witness
    best = int(np.argmax(deltas))
    value = max(0.0, float(deltas[best]))
    return DeltaWitness(value, tuple(int(v) for v in wits[best]))


def delta_four_point(space: FiniteMetricSpace, workers: int = 1) -> DeltaWitness:
    """Least delta with ``S1 <= S2 + 2*delta`` over all quadruples.

    ``S1 >= S2`` are the two largest of the pairing sums
    ``d(x,y)+d(z,p)``, ``d(x,z)+d(y,p)``, ``d(x,p)+d(y,z)``.
    """
    return _scan(space, _kernels.four_point_rows, workers)


def delta_gromov(space: FiniteMetricSpace, workers: int = 1) -> DeltaWitness:
    """Least delta with ``(x,z)_p >= min((x,y)_p, (y,z)_p) - delta`` for all x, y, z, p.

    Quadruples with a repeated point never need a positive delta, so only
    4-subsets are scanned, each under all of its labelings.
    """
    return _scan(space, _kernels.gromov_rows, workers)


def satisfies_four_point(
    space: FiniteMetricSpace, delta: float, tol: float = DEFAULT_TOL, workers: int = 1
) -> tuple[bool, DeltaWitness]:
    if delta < 0:
        raise NegativeDelta(f"delta must be nonnegative, got {delta}")
    w = delta_four_point(space, workers)
    return w.delta <= delta + tol, w


def _probe_subsets(n: int, probes: int, seed: int) -> list[list[int]]:
    if n < 2:
        return []
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(probes):
        size = int(rng.integers(1, n))
        out.append(sorted(rng.choice(n, size=size, replace=False).tolist()))
    return out


def equivalence_report(
    space: FiniteMetricSpace,
    tol: float = DEFAULT_TOL,
    probes: int = 10,
    seed: int = 0,
    workers: int = 1,
) -> HyperbolicityReport:
    """Both deltas plus the relations that must hold between them.

    Checks: the two deltas agree; delta is at most the diameter; random
    proper subspaces never have a larger delta.
    """
    d4 = delta_four_point(space, workers)
    d3 = delta_gromov(space, workers)
    diam = diameter(space)
    checks = [
        relation("gromov_equals_four_point", abs(d3.delta - d4.delta), 0.0, tol),
        relation("gromov_le_diameter", d3.delta, diam, tol),
    ]
    for k, idx in enumerate(_probe_subsets(space.n, probes, seed)):
        sub = delta_four_point(subspace(space, idx), workers)
        checks.append(relation(f"subspace_monotone[{k}]", sub.delta, d4.delta, tol))
    return HyperbolicityReport(d4, d3, diam, tuple(checks))
