"""Planar polylines and the signed-area primitives behind the equal-area cut.

All polygon areas are triangle fans anchored at the first vertex, summed
with :func:`math.fsum`.  The root finder in :mod:`eqarea.solver` drives
area differences down to ~1e-14, so plain summation noise is not acceptable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from eqarea.errors import MalformedFoldError

DUPLICATE_TOL = 1e-15
TIE_TOL = 1e-14


class Point(NamedTuple):
    x: float
    y: float


@dataclass
class Polyline:
    """Ordered vertex sequence with optional per-vertex metadata.

    ``xi`` holds the source parameter of each vertex on the initial curve,
    ``piece`` labels the smooth piece a vertex was sampled from and
    ``cut_id`` records which equal-area cut created it (-1 for none).
    Consecutive duplicates closer than 1e-15 are removed on construction.
    """

    x: np.ndarray
    y: np.ndarray
    xi: np.ndarray | None = None
    piece: np.ndarray | None = None
    cut_id: np.ndarray | None = field(default=None)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float).copy()
        self.y = np.asarray(self.y, dtype=float).copy()
        if self.x.ndim != 1 or self.x.shape != self.y.shape:
            raise ValueError("x and y must be 1d arrays of equal length")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise ValueError("polyline coordinates must be finite")
        n = self.x.size
        if self.xi is None:
            self.xi = np.full(n, np.nan)
        if self.piece is None:
            self.piece = np.zeros(n, dtype=int)
        if self.cut_id is None:
            self.cut_id = np.full(n, -1, dtype=int)
        self.xi = np.asarray(self.xi, dtype=float).copy()
        self.piece = np.asarray(self.piece, dtype=int).copy()
        self.cut_id = np.asarray(self.cut_id, dtype=int).copy()

        if n > 1:
            step = np.hypot(np.diff(self.x), np.diff(self.y))
            keep = np.concatenate(([True], step >= DUPLICATE_TOL))
            if not keep.all():
                for name in ("x", "y", "xi", "piece", "cut_id"):
                    setattr(self, name, getattr(self, name)[keep])
        if self.x.size < 2:
            raise ValueError("a polyline needs at least two distinct vertices")

    def __len__(self):
        return self.x.size

    @classmethod
    def from_points(cls, points: Sequence) -> "Polyline":
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        return cls(pts[:, 0], pts[:, 1])

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.y])

    def vertex(self, i: int) -> Point:
        return Point(float(self.x[i]), float(self.y[i]))

    def length(self) -> float:
        return float(np.sum(np.hypot(np.diff(self.x), np.diff(self.y))))


def _as_xy(vertices) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(vertices, Polyline):
        return vertices.x, vertices.y
    pts = np.asarray(vertices, dtype=float).reshape(-1, 2)
    return pts[:, 0], pts[:, 1]


def triangle_signed_area(t0, t1, t2) -> float:
    """Signed area of triangle ``t0 t1 t2``, positive when counterclockwise."""
    return 0.5 * ((t1[0] - t0[0]) * (t2[1] - t0[1]) - (t1[1] - t0[1]) * (t2[0] - t0[0]))


def _fan_area(x: np.ndarray, y: np.ndarray) -> float:
    # fan anchored at vertex 0; the closing triangle (T0, Tn, T1) is degenerate
    dx = x - x[0]
    dy = y - y[0]
    terms = dx[1:-1] * dy[2:] - dy[1:-1] * dx[2:]
    return 0.5 * math.fsum(terms.tolist())


def polygon_area(vertices) -> float:
    """Signed area of a closed polygon (positive for counterclockwise order).

    The polygon is implicitly closed from the last vertex back to the first.
    """
    x, y = _as_xy(vertices)
    if x.size < 3:
        raise ValueError("polygon_area needs at least 3 vertices")
    return _fan_area(x, y)


def s_curve_signed_area(curve: Polyline, i1: int, i2: int) -> float:
    """Signed area enclosed by ``curve[i1:i2+1]`` and the chord back to ``i1``."""
    n = len(curve)
    if not (0 <= i1 < i2 < n):
        raise IndexError(f"invalid vertex range [{i1}, {i2}] for {n} vertices")
    if i2 - i1 < 2:
        return 0.0
    return _fan_area(curve.x[i1:i2 + 1], curve.y[i1:i2 + 1])


def area_under_graph(curve) -> float:
    """Signed area between the polyline and the x-axis.

    Folded (multivalued) curves are handled through cancellation of the
    trapezoids of backward-running edges.
    """
    x, y = _as_xy(curve)
    terms = 0.5 * (y[1:] + y[:-1]) * np.diff(x)
    return math.fsum(terms.tolist())


class Lobe(NamedTuple):
    """Closed region cut from a curve by a vertical line.

    The loop is ``start``, vertices ``first..last`` (inclusive), ``end``, and
    the vertical chord back to ``start``.  ``keep_until``/``resume_from``
    give the slices of the original vertex list that survive when the lobe
    is replaced by its chord.
    """

    area: float
    start: Point
    end: Point
    first: int
    last: int
    keep_until: int
    resume_from: int
    arc_length: float


def _crossing(x, y, i, j, cut_x) -> Point:
    # point on edge (i, j) where x == cut_x; x[i], x[j] straddle cut_x
    xi, xj = x[i], x[j]
    if xj == xi:
        return Point(cut_x, float(y[i]))
    s = (cut_x - xi) / (xj - xi)
    return Point(cut_x, float(y[i] + s * (y[j] - y[i])))


def find_lobe(curve: Polyline, cut_x: float, anchor: int, tol: float = TIE_TOL) -> Lobe:
    """Locate the lobe through ``anchor`` cut off by the line ``x = cut_x``.

    The lobe is the maximal run of vertices, connected along the vertex
    order, lying strictly on the same side of the line as the anchor.
    """
    x, y = curve.x, curve.y
    n = x.size
    if not 0 <= anchor < n:
        raise IndexError(f"anchor {anchor} out of range")
    offset = x[anchor] - cut_x
    if abs(offset) <= tol:
        p = Point(float(cut_x), float(y[anchor]))
        return Lobe(0.0, p, p, anchor, anchor - 1, anchor, anchor + 1, 0.0)
    side = 1.0 if offset > 0 else -1.0
    outside = side * (x - cut_x) <= tol

    before = np.flatnonzero(outside[:anchor])
    after = np.flatnonzero(outside[anchor + 1:])
    if before.size == 0 or after.size == 0:
        raise MalformedFoldError(
            f"line x={cut_x!r} does not close a lobe through vertex {anchor}")
    a = int(before[-1])
    b = int(anchor + 1 + after[0])

    if abs(x[a] - cut_x) <= tol:
        start, keep_until = Point(float(cut_x), float(y[a])), a
    else:
        start, keep_until = _crossing(x, y, a, a + 1, cut_x), a + 1
    if abs(x[b] - cut_x) <= tol:
        end, resume_from = Point(float(cut_x), float(y[b])), b + 1
    else:
        end, resume_from = _crossing(x, y, b - 1, b, cut_x), b

    lx = np.concatenate(([start.x], x[a + 1:b], [end.x]))
    ly = np.concatenate(([start.y], y[a + 1:b], [end.y]))
    area = abs(_fan_area(lx, ly)) if lx.size >= 3 else 0.0
    arc = float(np.sum(np.hypot(np.diff(lx), np.diff(ly))))
    return Lobe(area, start, end, a + 1, b - 1, keep_until, resume_from, arc)


def lobe_area(curve: Polyline, cut_x: float, anchor: int) -> float:
    """Unsigned area of the lobe through ``anchor`` cut off by ``x = cut_x``."""
    return find_lobe(curve, cut_x, anchor).area
