"""Univalence: verdict on |a| <= 2, the explicit collision pair, and numeric checks.

The collision pair for |a| > 2 is z1 = i tan(pi / (2|a|)) and z2 = conj(z1).
There (1+z1)/(1-z1) = exp(i pi/|a|), so k_a(z1) = -1/a is real.  Real
Taylor coefficients of h and g then force f(z1) = f(z2).

``injectivity_scan`` samples f on a circle and looks for self-intersections
of the image polyline.  A sense-preserving harmonic map whose boundary curve
is simple is injective inside it, so a clean scan supports univalence and a
crossing refutes it.  ``chd_check`` tests convexity in the horizontal
direction by counting crossings of horizontal lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analytic_maps import koebe_generalized
from .errors import DegenerateCurve, ResolutionInsufficient
from .shear import Params, eval_f_many

UNIVALENT, NOT_UNIVALENT = "univalent", "not_univalent"


@dataclass(frozen=True)
class ScanResult:
    passed: bool
    pair: tuple | None = None       # (theta_i, theta_j) of the first crossing segments
    r: float = 0.0
    samples: int = 0
    step_ratio: float = 0.0

    @property
    def status(self) -> str:
        return "passed" if self.passed else "crossing_found"


@dataclass(frozen=True)
class UnivalenceReport:
    verdict: str
    witness: tuple | None = None
    witness_gap: float | None = None
    k_at_witness: complex | None = None
    scan: ScanResult | None = None
    r_scan: float | None = None
    samples: int | None = None


@dataclass(frozen=True)
class ChdResult:
    convex: bool
    level: float | None = None
    crossings: int = 0

    @property
    def status(self) -> str:
        return "convex_in_horizontal_direction" if self.convex else "violation"


def witness_pair(a: float):
    if abs(a) <= 2:
        return None
    z1 = 1j * math.tan(math.pi / (2 * abs(a)))
    return z1, z1.conjugate()


def univalence_verdict(p: Params, scan_r: float | None = None, samples: int = 4096) -> UnivalenceReport:
    verdict = UNIVALENT if -2 <= p.a <= 2 else NOT_UNIVALENT
    witness = witness_pair(p.a)
    gap = kval = None
    if witness is not None:
        _, _, f, _, _ = eval_f_many(p, np.array(witness))
        gap = float(abs(f[0] - f[1]))
        kval = complex(koebe_generalized(p.a, witness[0]))
    scan = injectivity_scan(p, scan_r, samples) if scan_r is not None else None
    return UnivalenceReport(verdict, witness, gap, kval, scan,
                            scan_r, samples if scan_r is not None else None)


# --------------------------------------------------------------------------
# polyline geometry


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    F = Fraction
    v = (F(bx) - F(ax)) * (F(cy) - F(ay)) - (F(by) - F(ay)) * (F(cx) - F(ax))
    return (v > 0) - (v < 0)


def _orient(a, b, c):
    """Sign of the cross product (b - a) x (c - a), exact when the float result is ambiguous."""
    dx1, dy1 = b[:, 0] - a[:, 0], b[:, 1] - a[:, 1]
    dx2, dy2 = c[:, 0] - a[:, 0], c[:, 1] - a[:, 1]
    v = dx1 * dy2 - dy1 * dx2
    s = np.sign(v).astype(int)
    bound = 8 * np.finfo(float).eps * (np.abs(dx1 * dy2) + np.abs(dy1 * dx2))
    for k in np.flatnonzero(np.abs(v) <= bound):
        s[k] = _orient_exact(a[k, 0], a[k, 1], b[k, 0], b[k, 1], c[k, 0], c[k, 1])
    return s


def _on_segment(p, q, r):
    """For collinear p, q, r: does r lie in the bounding box of pq."""
    return ((np.minimum(p[:, 0], q[:, 0]) <= r[:, 0]) & (r[:, 0] <= np.maximum(p[:, 0], q[:, 0]))
            & (np.minimum(p[:, 1], q[:, 1]) <= r[:, 1]) & (r[:, 1] <= np.maximum(p[:, 1], q[:, 1])))


def segments_intersect(p1, p2, p3, p4):
    """Closed-segment intersection test for arrays of point pairs (shape (m, 2))."""
    o1, o2 = _orient(p1, p2, p3), _orient(p1, p2, p4)
    o3, o4 = _orient(p3, p4, p1), _orient(p3, p4, p2)
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    hit |= (o1 == 0) & _on_segment(p1, p2, p3)
    hit |= (o2 == 0) & _on_segment(p1, p2, p4)
    hit |= (o3 == 0) & _on_segment(p3, p4, p1)
    hit |= (o4 == 0) & _on_segment(p3, p4, p2)
    return hit


def find_self_intersection(points) -> tuple[int, int] | None:
    """First pair (i, j), i < j, of non-adjacent crossing edges of a closed polyline.

    Edges are pruned by sorting their bounding boxes on x and keeping only
    pairs whose x- and y-extents overlap.
    """
    pts = np.asarray(points, dtype=complex)
    n = pts.size
    P = np.column_stack([pts.real, pts.imag])
    Q = np.roll(P, -1, axis=0)
    xmin, xmax = np.minimum(P[:, 0], Q[:, 0]), np.maximum(P[:, 0], Q[:, 0])
    ymin, ymax = np.minimum(P[:, 1], Q[:, 1]), np.maximum(P[:, 1], Q[:, 1])

    order = np.argsort(xmin, kind="stable")
    xs = xmin[order]
    end = np.searchsorted(xs, xmax[order], side="right")
    pos = np.arange(n)
    counts = np.maximum(end - pos - 1, 0)
    total = int(counts.sum())
    if total == 0:
        return None
    first = np.repeat(pos, counts)
    offs = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    i = order[first]
    j = order[first + 1 + offs]
    keep = (ymin[i] <= ymax[j]) & (ymin[j] <= ymax[i])
    i, j = i[keep], j[keep]
    lo, hi = np.minimum(i, j), np.maximum(i, j)
    adjacent = (hi - lo == 1) | ((lo == 0) & (hi == n - 1))
    lo, hi = lo[~adjacent], hi[~adjacent]
    if lo.size == 0:
        return None
    hit = segments_intersect(P[lo], Q[lo], P[hi], Q[hi])
    if not np.any(hit):
        return None
    cand = np.lexsort((hi[hit], lo[hit]))[0]
    return int(lo[hit][cand]), int(hi[hit][cand])


def injectivity_scan(p: Params, r: float, n: int = 4096, max_step_fraction: float = 0.2) -> ScanResult:
    """Sample f on |z| = r and test the image polyline for self-intersections."""
    if not 0 < r < 1:
        raise ValueError("scan radius must lie in (0, 1)")
    if n < 256:
        raise ValueError("need at least 256 samples")
    theta = 2 * math.pi * np.arange(n) / n
    _, _, f, _, _ = eval_f_many(p, r * np.exp(1j * theta))
    steps = np.abs(np.diff(np.append(f, f[0])))
    extent = max(np.ptp(f.real), np.ptp(f.imag))
    ratio = float(steps.max() / extent) if extent > 0 else math.inf
    if ratio > max_step_fraction:
        raise ResolutionInsufficient(
            f"largest image step is {ratio:.3f} of the curve extent (limit {max_step_fraction})")
    found = find_self_intersection(f)
    if found is None:
        return ScanResult(True, None, r, n, ratio)
    return ScanResult(False, (float(theta[found[0]]), float(theta[found[1]])), r, n, ratio)


def chd_check(curve) -> ChdResult:
    """Convexity of a closed curve in the horizontal direction.

    Horizontal levels are the midpoints between consecutive distinct vertex
    ordinates, so no level passes through a vertex and every crossing is a
    strict sign change along one edge.  More than two crossings on any level
    is a violation.
    """
    pts = np.asarray(curve, dtype=complex)
    if pts.size < 64:
        raise ValueError("need a closed polyline with at least 64 vertices")
    y = pts.imag
    ys = np.unique(y)
    if ys.size < 2:
        raise DegenerateCurve("curve has zero vertical extent")
    levels = 0.5 * (ys[:-1] + ys[1:])
    y_next = np.roll(y, -1)
    lo = np.sort(np.minimum(y, y_next))
    hi = np.sort(np.maximum(y, y_next))
    counts = np.searchsorted(lo, levels, side="left") - np.searchsorted(hi, levels, side="left")
    bad = np.flatnonzero(counts > 2)
    if bad.size:
        k = bad[0]
        return ChdResult(False, float(levels[k]), int(counts[k]))
    return ChdResult(True, None, int(counts.max()))
