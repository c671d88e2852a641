"""Finite metric spaces, axiom validation and Gromov products."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, DuplicateIndex, IndexOutOfRange

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Labelled points with a full distance matrix.

    The matrix is stored as a read-only float64 array. Construction does not
    check the metric axioms; use :func:`validate_metric` for that.
    """

    labels: tuple[str, ...]
    dist: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, point: int | str) -> int:
        """Resolve a label or an integer index to an index."""
        if isinstance(point, (int, np.integer)) and not isinstance(point, bool):
            i = int(point)
            if not 0 <= i < self.n:
                raise IndexOutOfRange(f"index {i} out of range for {self.n} points")
            return i
        try:
            return self.labels.index(str(point))
        except ValueError:
            raise IndexOutOfRange(f"unknown point label {point!r}") from None

    def d(self, x: int | str, y: int | str) -> float:
        return float(self.dist[self.index(x), self.index(y)])

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    __hash__ = None


def build_space(labels: Sequence, dist_matrix) -> FiniteMetricSpace:
    labels = tuple(str(lab) for lab in labels)
    dist = np.array(dist_matrix, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise DimensionMismatch(f"distance matrix must be square, got shape {dist.shape}")
    if dist.shape[0] != len(labels):
        raise DimensionMismatch(f"{len(labels)} labels for a {dist.shape[0]}x{dist.shape[0]} matrix")
    if not labels:
        raise DimensionMismatch("empty metric space")
    if len(set(labels)) != len(labels):
        raise DimensionMismatch("labels must be distinct")
    dist.setflags(write=False)
    return FiniteMetricSpace(labels, dist)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violations: tuple[Violation, ...] = ()

    def by_axiom(self) -> dict[str, Violation]:
        return {v.axiom: v for v in self.violations}


def _scaled(mag, tol):
    return tol * np.maximum(1.0, np.abs(mag))


def validate_metric(space: FiniteMetricSpace, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the metric axioms, keeping the worst witness for each failed axiom.

    Axioms: ``zero_diagonal``, ``symmetry``, ``positivity`` (off-diagonal
    entries > 0), ``triangle``. Comparisons use a relative tolerance
    ``tol * max(1, |value|)``. Triangle witnesses are ``(i, j, k)`` for
    ``d(i,k) > d(i,j) + d(j,k)``. Ties go to the lexicographically smallest
    witness.
    """
    d = space.dist
    n = space.n
    violations = []

    if not np.all(np.isfinite(d)):
        i, j = np.argwhere(~np.isfinite(d))[0]
        violations.append(Violation("finite", (int(i), int(j)), float("inf")))
        return ValidationReport(False, tuple(violations))

    diag = np.abs(np.diag(d))
    bad = diag > _scaled(0.0, tol)
    if bad.any():
        i = int(np.argmax(np.where(bad, diag, -1.0)))
        violations.append(Violation("zero_diagonal", (i,), float(diag[i])))

    asym = np.abs(d - d.T)
    bad = asym > _scaled(np.maximum(d, d.T), tol)
    if bad.any():
        flat = int(np.argmax(np.where(bad, asym, -1.0)))
        i, j = divmod(flat, n)
        violations.append(Violation("symmetry", (min(i, j), max(i, j)), float(asym[i, j])))

    off = ~np.eye(n, dtype=bool)
    bad = off & (d <= _scaled(0.0, tol))
    if bad.any():
        deficit = np.where(bad, -d, -np.inf)
        flat = int(np.argmax(deficit))
        i, j = divmod(flat, n)
        violations.append(Violation("positivity", (i, j), float(max(0.0, -d[i, j]))))

    worst, witness = 0.0, None
    for i in range(n):
        # excess[j, k] = d(i,k) - d(i,j) - d(j,k)
        excess = d[i][None, :] - d[i][:, None] - d
        bad = excess > _scaled(d[i][None, :], tol)
        if bad.any():
            masked = np.where(bad, excess, -np.inf)
            flat = int(np.argmax(masked))
            j, k = divmod(flat, n)
            if masked[j, k] > worst:
                worst, witness = float(masked[j, k]), (i, j, k)
    if witness is not None:
        violations.append(Violation("triangle", witness, worst))

    return ValidationReport(not violations, tuple(violations))


def gromov_product(space: FiniteMetricSpace, x, z, p) -> float:
    """``(x, z)_p = (d(x,p) + d(z,p) - d(x,z)) / 2``."""
    x, z, p = space.index(x), space.index(z), space.index(p)
    d = space.dist
    return 0.5 * (float(d[x, p]) + float(d[z, p]) - float(d[x, z]))


def diameter(space: FiniteMetricSpace) -> float:
    return float(space.dist.max())


def subspace(space: FiniteMetricSpace, indices: Sequence) -> FiniteMetricSpace:
    idx = [space.index(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise DuplicateIndex(f"repeated index in {list(indices)!r}")
    sub = space.dist[np.ix_(idx, idx)]
    return build_space([space.labels[i] for i in idx], sub)
