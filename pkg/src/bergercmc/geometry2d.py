"""Robust planar polyline self-intersection tests.

Candidate segment pairs are collected with a uniform spatial hash on
bounding boxes; the actual crossing test runs in exact rational arithmetic
(floats convert exactly to Fractions), so a reported transverse crossing is
never a rounding artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree


def _orient(ax, ay, bx, by, cx, cy):
    """Exact sign of the cross product (b - a) x (c - a)."""
    v = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay)) - \
        (Fraction(by) - Fraction(ay)) * (Fraction(cx) - Fraction(ax))
    return (v > 0) - (v < 0)


def segments_cross(p, q, r, s) -> bool:
    """Exact test: do the closed segments [p,q] and [r,s] intersect?

    Transverse crossings and improper touchings both count; collinear
    segments count only if their overlap is more than a single shared
    endpoint would give for adjacent segments (callers exclude adjacency).
    """
    o1 = _orient(p[0], p[1], q[0], q[1], r[0], r[1])
    o2 = _orient(p[0], p[1], q[0], q[1], s[0], s[1])
    o3 = _orient(r[0], r[1], s[0], s[1], p[0], p[1])
    o4 = _orient(r[0], r[1], s[0], s[1], q[0], q[1])
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == o2 == o3 == o4 == 0:
        # collinear: check 1-d overlap on the dominant axis
        axis = 0 if abs(Fraction(q[0]) - Fraction(p[0])) >= abs(Fraction(q[1]) - Fraction(p[1])) else 1
        a0, a1 = sorted((Fraction(p[axis]), Fraction(q[axis])))
        b0, b1 = sorted((Fraction(r[axis]), Fraction(s[axis])))
        return max(a0, b0) < min(a1, b1)
    # an endpoint lies exactly on the other segment
    for o, a, b, c in ((o1, p, q, r), (o2, p, q, s), (o3, r, s, p), (o4, r, s, q)):
        if o == 0 and _between(a, b, c):
            return True
    return False


def _between(a, b, c) -> bool:
    """c collinear with [a,b]: is c strictly inside the bounding box of [a,b]?"""
    return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and
            min(a[1], b[1]) <= c[1] <= max(a[1], b[1]) and
            not ((c[0] == a[0] and c[1] == a[1]) or (c[0] == b[0] and c[1] == b[1])))


def _segment_distance(p, q, r, s) -> float:
    """Euclidean distance between two segments (float arithmetic)."""
    def pt_seg(c, a, b):
        ab = b - a
        denom = float(ab @ ab)
        if denom == 0.0:
            return float(np.linalg.norm(c - a))
        t = float((c - a) @ ab) / denom
        t = min(1.0, max(0.0, t))
        return float(np.linalg.norm(c - (a + t * ab)))

    p, q, r, s = (np.asarray(v, dtype=float) for v in (p, q, r, s))
    return min(pt_seg(p, r, s), pt_seg(q, r, s), pt_seg(r, p, q), pt_seg(s, p, q))


@dataclass
class IntersectionReport:
    crossings: int
    pairs: list
    margin: float
    resolution: float


def _candidate_pairs(points: np.ndarray, index_gap: int):
    """Segment index pairs whose bounding boxes may overlap (spatial hash)."""
    n = len(points) - 1
    seg_lo = np.minimum(points[:-1], points[1:])
    seg_hi = np.maximum(points[:-1], points[1:])
    cell = float(np.max(seg_hi - seg_lo))
    if cell == 0.0:
        return []
    grid = {}
    for i in range(n):
        i0, j0 = int(seg_lo[i, 0] // cell), int(seg_lo[i, 1] // cell)
        i1, j1 = int(seg_hi[i, 0] // cell), int(seg_hi[i, 1] // cell)
        for ci in range(i0, i1 + 1):
            for cj in range(j0, j1 + 1):
                grid.setdefault((ci, cj), []).append(i)
    pairs = set()
    for bucket in grid.values():
        bucket.sort()
        for u in range(len(bucket)):
            for v in range(u + 1, len(bucket)):
                i, j = bucket[u], bucket[v]
                if j - i > index_gap:
                    # bbox overlap prefilter before the exact test
                    if (seg_lo[i, 0] <= seg_hi[j, 0] and seg_lo[j, 0] <= seg_hi[i, 0] and
                            seg_lo[i, 1] <= seg_hi[j, 1] and seg_lo[j, 1] <= seg_hi[i, 1]):
                        pairs.add((i, j))
    return sorted(pairs)


def polyline_self_intersection_report(points: np.ndarray,
                                      arc_factor: float = 20.0) -> IntersectionReport:
    """Exact self-intersection count and clearance margin of an open polyline.

    Crossings are counted over all segment pairs that do not share an
    endpoint.  The margin is the minimum distance between segment pairs
    whose separation along the curve exceeds arc_factor times the coarsest
    segment length, so it measures genuine near-self-contact rather than
    neighbours along the curve.
    """
    pts = np.asarray(points, dtype=float)
    seglen = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    res = float(np.max(seglen))
    arclen = np.concatenate([[0.0], np.cumsum(seglen)])

    crossing_pairs = []
    for i, j in _candidate_pairs(pts, index_gap=1):
        if segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1]):
            crossing_pairs.append((i, j))

    # clearance margin among arc-separated parts of the curve
    arc_min = arc_factor * res
    margin = arc_min  # capped: beyond this the curve is safely clear
    nseg = len(seglen)
    qp = cKDTree(pts).query_pairs(arc_min, output_type="ndarray")
    if len(qp):
        ii, jj = qp[:, 0], qp[:, 1]
        keep = arclen[jj] - arclen[ii] >= arc_min
        if keep.any():
            ii, jj = ii[keep], jj[keep]
            d = np.linalg.norm(pts[ii] - pts[jj], axis=1)
            dmin = float(d.min())
            # refine the point-pair minimum with segment distances nearby
            close = np.nonzero(d <= dmin + 2.0 * res)[0]
            if len(close) > 2000:
                close = close[np.argsort(d[close])[:2000]]
            best = dmin
            for a_, b_ in zip(ii[close], jj[close]):
                for si in range(max(a_ - 1, 0), min(a_, nseg - 1) + 1):
                    for sj in range(max(b_ - 1, 0), min(b_, nseg - 1) + 1):
                        best = min(best, _segment_distance(pts[si], pts[si + 1],
                                                           pts[sj], pts[sj + 1]))
            margin = min(margin, best)

    return IntersectionReport(crossings=len(crossing_pairs), pairs=crossing_pairs,
                              margin=margin, resolution=res)
