"""First-order Godunov finite-volume solver, used as an independent reference.

The numerical flux is the exact Riemann flux for a flux without inflection
points::

    F(uL, uR) = min f on [uL, uR]   if uL <= uR
                max f on [uR, uL]   otherwise

with the interior extremum located by bisection on f'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from eqarea.flux import Flux
from eqarea.profile import PiecewiseProfile

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass
class Grid1D:
    x_min: float
    x_max: float
    n_cells: int
    averages: np.ndarray
    t: float = 0.0
    steps: int = 0

    def __post_init__(self):
        self.averages = np.asarray(self.averages, dtype=float)
        if self.dx <= 0:
            raise ValueError("grid must have positive cell width")
        if self.averages.shape != (self.n_cells,):
            raise ValueError("averages must have one entry per cell")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def mass(self) -> float:
        return math.fsum((self.averages * self.dx).tolist())

    def __call__(self, x):
        """Piecewise-constant reconstruction; zero outside the grid."""
        xq = np.asarray(x, dtype=float)
        k = np.floor((xq - self.x_min) / self.dx).astype(int)
        inside = (xq >= self.x_min) & (xq < self.x_max)
        out = np.where(inside, self.averages[np.clip(k, 0, self.n_cells - 1)], 0.0)
        return float(out) if out.ndim == 0 else out


def cell_averages(profile: PiecewiseProfile, edges: np.ndarray) -> np.ndarray:
    """Cell averages of ``h`` by 8-point Gauss-Legendre on each smooth sub-interval."""
    lo, hi = edges[:-1], edges[1:]
    out = np.zeros(lo.size)
    bps = np.array(profile.breakpoints)
    split = np.zeros(lo.size, dtype=bool)
    for bp in bps:
        split |= (lo < bp) & (bp < hi)

    def gl(a, b):
        # a, b arrays; both inside one smooth piece
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        vals = profile(pts.ravel()).reshape(pts.shape)
        return half * (vals @ _GL_WEIGHTS)

    plain = ~split
    out[plain] = gl(lo[plain], hi[plain])
    for k in np.flatnonzero(split):
        cuts = np.concatenate(([lo[k]], bps[(bps > lo[k]) & (bps < hi[k])], [hi[k]]))
        out[k] = gl(cuts[:-1], cuts[1:]).sum()
    return out / (hi - lo)


def _stationary_point(flux: Flux, a: np.ndarray, b: np.ndarray, iters: int = 60) -> np.ndarray:
    # f' changes sign on [a, b] with a < b; f' is monotone
    fa = flux.deriv(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        fm = flux.deriv(m)
        left = np.sign(fm) == np.sign(fa)
        a = np.where(left, m, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, m)
    return 0.5 * (a + b)


def godunov_flux(flux: Flux, u_left, u_right) -> np.ndarray:
    ul = np.asarray(u_left, dtype=float)
    ur = np.asarray(u_right, dtype=float)
    lo, hi = np.minimum(ul, ur), np.maximum(ul, ur)
    f_lo, f_hi = flux.eval(lo), flux.eval(hi)
    rising = ul <= ur
    out = np.where(rising, np.minimum(f_lo, f_hi), np.maximum(f_lo, f_hi))

    sonic = np.sign(flux.deriv(lo)) * np.sign(flux.deriv(hi)) < 0
    if np.any(sonic):
        us = _stationary_point(flux, lo[sonic], hi[sonic])
        f_s = flux.eval(us)
        cur = out[sonic]
        out[sonic] = np.where(rising[sonic], np.minimum(cur, f_s), np.maximum(cur, f_s))
    return out


def godunov_solve(flux: Flux, profile: PiecewiseProfile, t_final: float,
                  n_cells: int = 4000, cfl: float = 0.9,
                  on_step: Callable[[float, np.ndarray], None] | None = None) -> Grid1D:
    """Evolve cell averages of ``h`` to ``t_final`` with the Godunov scheme.

    The grid covers the support of ``h`` plus ``max(1, t_final * max|f'|)``
    on each side, so no wave reaches the (zero-gradient) boundaries.
    """
    if not 0 < cfl <= 0.9:
        raise ValueError("cfl must lie in (0, 0.9]")
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    if n_cells < 1:
        raise ValueError("n_cells must be positive")
    u_lo, u_hi = profile.value_range()
    margin = max(1.0, t_final * flux.max_speed(u_lo, u_hi))
    a, b = profile.support
    x_min, x_max = a - margin, b + margin
    edges = np.linspace(x_min, x_max, n_cells + 1)
    u = cell_averages(profile, edges)
    dx = (x_max - x_min) / n_cells

    t, steps = 0.0, 0
    while t < t_final:
        speed = float(np.max(np.abs(flux.deriv(u))))
        if speed == 0.0:
            break
        dt = min(cfl * dx / speed, t_final - t)
        ext = np.concatenate(([u[0]], u, [u[-1]]))
        fluxes = godunov_flux(flux, ext[:-1], ext[1:])
        u = u - dt / dx * np.diff(fluxes)
        t = t_final if t + dt >= t_final else t + dt
        steps += 1
        if on_step is not None:
            on_step(t, u)
    return Grid1D(x_min, x_max, n_cells, u, t=t_final, steps=steps)
