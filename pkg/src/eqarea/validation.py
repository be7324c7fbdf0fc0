"""Checks of a computed solution against the conservation law it should solve."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from eqarea.errors import UnmatchedShockError
from eqarea.flux import Flux, rankine_hugoniot_speed
from eqarea.geometry import area_under_graph
from eqarea.godunov import Grid1D
from eqarea.profile import PiecewiseProfile, initial_area
from eqarea.solver import SolutionCurve, solve_at_time


@dataclass
class ValidationReport:
    conservation_residual: float
    rh_residuals: list[tuple[float, float]] = field(default_factory=list)
    entropy_ok: bool = True
    l1_vs_reference: float | None = None

    @property
    def max_rh_residual(self) -> float:
        return max((r for _, r in self.rh_residuals), default=0.0)

    def passed(self, conservation_tol: float, rh_tol: float) -> bool:
        return (self.conservation_residual <= conservation_tol
                and self.max_rh_residual <= rh_tol and self.entropy_ok)


def characteristic_speed_bound(flux: Flux, profile: PiecewiseProfile) -> float:
    return flux.max_speed(*profile.value_range())


def entropy_admissible(flux: Flux, u_minus: float, u_plus: float) -> bool:
    """Convex flux jumps down across a shock, concave flux jumps up."""
    return u_minus > u_plus if flux.is_convex else u_minus < u_plus


def _match(reference: float, candidates: list[float], radius: float) -> int:
    if not candidates:
        raise UnmatchedShockError("no shocks to match against")
    dist = np.abs(np.asarray(candidates) - reference)
    k = int(np.argmin(dist))
    if dist[k] > radius:
        raise UnmatchedShockError(
            f"nearest shock to x={reference:.6g} is {dist[k]:.3g} away (radius {radius:.3g})")
    return k


def shock_speed_fd(flux: Flux, profile: PiecewiseProfile, shock_index: int, t: float,
                   dt: float, n_points: int = 1000, **solve_kwargs) -> float:
    """Central finite-difference speed of shock ``shock_index`` at time ``t``."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    if dt > t:
        raise ValueError("dt must not exceed t")
    here, before, after = (
        solve_at_time(flux, profile, s, n_points, **solve_kwargs) for s in (t, t - dt, t + dt))
    counts = {len(here.shocks), len(before.shocks), len(after.shocks)}
    if len(counts) != 1:
        raise UnmatchedShockError(
            f"shock count changes across [{t - dt}, {t + dt}]: likely a merge near t={t}")
    if not 0 <= shock_index < len(here.shocks):
        raise IndexError(f"shock_index {shock_index} out of range")
    radius = 10.0 * dt * characteristic_speed_bound(flux, profile)
    x0 = here.shocks[shock_index].x
    xm = before.shocks[_match(x0, [s.x for s in before.shocks], radius)].x
    xp = after.shocks[_match(x0, [s.x for s in after.shocks], radius)].x
    return (xp - xm) / (2.0 * dt)


def validate(flux: Flux, profile: PiecewiseProfile, solution: SolutionCurve,
             dt: float | None = None, reference=None, grid: int = 10_000) -> ValidationReport:
    """Conservation, Rankine-Hugoniot and entropy checks for ``solution``.

    ``reference`` (another solution or a :class:`Grid1D`) adds an L1 distance.
    """
    residual = abs(area_under_graph(solution.curve) - initial_area(profile))
    if dt is None:
        dt = 1e-3 * solution.t
    rh = []
    if solution.shocks and dt > 0:
        kwargs = dict(jump_subpoints=solution.jump_subpoints, root_tol=solution.root_tol)
        for k, shock in enumerate(solution.shocks):
            speed = shock_speed_fd(flux, profile, k, solution.t, dt, solution.n_points, **kwargs)
            rh.append((shock.x, abs(speed - rankine_hugoniot_speed(flux, shock.u_minus, shock.u_plus))))
    entropy = all(entropy_admissible(flux, s.u_minus, s.u_plus) for s in solution.shocks)
    l1 = None if reference is None else l1_distance(solution, reference, grid)
    return ValidationReport(residual, rh, entropy, l1)


def _support(obj) -> tuple[float, float]:
    if isinstance(obj, Grid1D):
        return obj.x_min, obj.x_max
    if isinstance(obj, SolutionCurve):
        return float(obj.curve.x.min()), float(obj.curve.x.max())
    raise TypeError(f"cannot take the support of {type(obj).__name__}")


def l1_distance(a, b, grid: int = 10_000) -> float:
    """Midpoint-rule L1 distance between two solutions on their joint support."""
    (a0, a1), (b0, b1) = _support(a), _support(b)
    lo, hi = min(a0, b0), max(a1, b1)
    width = (hi - lo) / grid
    mid = lo + (np.arange(grid) + 0.5) * width
    return float(np.sum(np.abs(a(mid) - b(mid))) * width)
