"""The characteristic shear ``G_t(x, y) = (x + f'(y) t, y)`` and fold analysis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eqarea.flux import Flux
from eqarea.geometry import Point, Polyline

PLATEAU_TOL = 1e-14


@dataclass
class ShearedCurve:
    """The curve ``gamma_t``: the initial polyline pushed along characteristics."""

    t: float
    vertices: Polyline

    @property
    def source_params(self) -> np.ndarray:
        return self.vertices.xi


def apply_shear(flux: Flux, p, t: float) -> Point:
    if t < 0:
        raise ValueError("t must be non-negative")
    x, y = p
    return Point(float(x + flux.deriv(y) * t), float(y))


def shear_polyline(flux: Flux, gamma0: Polyline, t: float) -> ShearedCurve:
    if t < 0:
        raise ValueError("t must be non-negative")
    speed = np.asarray(flux.deriv(gamma0.y), dtype=float) * np.ones_like(gamma0.y)
    x = gamma0.x + speed * t
    # no dedup here: shearing never merges distinct vertices of the same y,
    # and the vertex-for-vertex correspondence with gamma0 must survive
    out = Polyline.__new__(Polyline)
    out.x, out.y = x, gamma0.y.copy()
    out.xi, out.piece, out.cut_id = gamma0.xi.copy(), gamma0.piece.copy(), gamma0.cut_id.copy()
    return ShearedCurve(float(t), out)


def plateau_runs(x: np.ndarray, tol: float = PLATEAU_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Collapse runs of (nearly) equal consecutive x values.

    Returns the index of the first vertex of each run and the run's x.
    """
    x = np.asarray(x, dtype=float)
    starts = np.concatenate(([0], np.flatnonzero(np.abs(np.diff(x)) > tol) + 1))
    return starts, x[starts]


def x_extrema(x: np.ndarray, tol: float = PLATEAU_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Vertex indices of strict local maxima and minima of ``x`` along the curve.

    Each index is the first vertex of the (collapsed) plateau run.
    """
    starts, rx = plateau_runs(x, tol)
    if rx.size < 3:
        return np.empty(0, dtype=int), np.empty(0, dtype=int)
    mid, left, right = rx[1:-1], rx[:-2], rx[2:]
    maxima = np.flatnonzero((mid > left) & (mid > right)) + 1
    minima = np.flatnonzero((mid < left) & (mid < right)) + 1
    return starts[maxima], starts[minima]


def count_x_extrema(curve) -> int:
    """Number of strict local extrema of the x-coordinate along the curve."""
    poly = curve.vertices if isinstance(curve, ShearedCurve) else curve
    if len(poly) < 3:
        raise ValueError("need at least 3 vertices")
    maxima, minima = x_extrema(poly.x)
    return int(maxima.size + minima.size)
