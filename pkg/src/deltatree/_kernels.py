"""Compiled quadruple scans.

Each kernel handles a list of first indices ``i`` and, for every ``i``, scans
all 4-subsets ``i < j < k < l`` in lexicographic order, keeping the first
(lexicographically smallest) maximiser. Per-row results do not depend on how
rows are distributed over workers, which is what makes parallel runs
reproducible.
"""

import itertools

import numpy as np
from numba import njit

# Positions (into a sorted 4-subset) of the ordered labelings (x, y, z, p)
# with x < z, listed in lexicographic order. Swapping x and z leaves the
# Gromov requirement unchanged, so these 12 cover all 24 labelings.
GROMOV_LABELINGS = np.array(
    [perm for perm in itertools.permutations(range(4)) if perm[0] < perm[2]],
    dtype=np.int64,
)


@njit(cache=True, nogil=True)
def four_point_rows(d, rows, out_delta, out_wit):
    n = d.shape[0]
    for r in range(rows.shape[0]):
        i = rows[r]
        di = d[i]
        best = -1.0
        bj = bk = bl = -1
        for j in range(i + 1, n):
            dij = di[j]
            dj = d[j]
            for k in range(j + 1, n):
                dik = di[k]
                djk = dj[k]
                dk = d[k]
                for l in range(k + 1, n):
                    s1 = dij + dk[l]
                    s2 = dik + dj[l]
                    s3 = di[l] + djk
                    # largest minus middle of the three pairing sums
                    hi = max(s1, s2)
                    mid = max(min(s1, s2), min(hi, s3))
                    v = 0.5 * (max(hi, s3) - mid)
                    if v > best:
                        best = v
                        bj = j
                        bk = k
                        bl = l
        out_delta[r] = best
        out_wit[r, 0] = i
        out_wit[r, 1] = bj
        out_wit[r, 2] = bk
        out_wit[r, 3] = bl


@njit(cache=True, nogil=True, inline="always")
def _requirement(dxp, dyp, dzp, dxy, dyz, dxz):
    """min((x,y)_p, (y,z)_p) - (x,z)_p from the six distances."""
    xy = 0.5 * (dxp + dyp - dxy)
    yz = 0.5 * (dyp + dzp - dyz)
    xz = 0.5 * (dxp + dzp - dxz)
    return min(xy, yz) - xz


@njit(cache=True, nogil=True)
def gromov_rows(d, rows, out_delta, out_wit):
    n = d.shape[0]
    vals = np.empty(12)
    for r in range(rows.shape[0]):
        i = rows[r]
        di = d[i]
        best = -1.0
        bj = bk = bl = bm = -1
        for j in range(i + 1, n):
            a01 = di[j]
            dj = d[j]
            for k in range(j + 1, n):
                a02 = di[k]
                a12 = dj[k]
                dk = d[k]
                for l in range(k + 1, n):
                    a03 = di[l]
                    a13 = dj[l]
                    a23 = dk[l]
                    # one entry per row of GROMOV_LABELINGS, same order
                    vals[0] = _requirement(a03, a13, a23, a01, a12, a02)
                    vals[1] = _requirement(a02, a12, a23, a01, a13, a03)
                    vals[2] = _requirement(a03, a23, a13, a02, a12, a01)
                    vals[3] = _requirement(a01, a12, a13, a02, a23, a03)
                    vals[4] = _requirement(a02, a23, a12, a03, a13, a01)
                    vals[5] = _requirement(a01, a13, a12, a03, a23, a02)
                    vals[6] = _requirement(a13, a03, a23, a01, a02, a12)
                    vals[7] = _requirement(a12, a02, a23, a01, a03, a13)
                    vals[8] = _requirement(a01, a02, a03, a12, a23, a13)
                    vals[9] = _requirement(a01, a03, a02, a13, a23, a12)
                    vals[10] = _requirement(a12, a01, a13, a02, a03, a23)
                    vals[11] = _requirement(a02, a01, a03, a12, a13, a23)
                    for m in range(12):
                        if vals[m] > best:
                            best = vals[m]
                            bj = j
                            bk = k
                            bl = l
                            bm = m
        out_delta[r] = best
        pts = (i, bj, bk, bl)
        for c in range(4):
            out_wit[r, c] = pts[GROMOV_LABELINGS[bm, c]] if bm >= 0 else -1
