"""Shock paths in the (x, t) plane from independent fixed-time solves."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from eqarea.errors import EqualAreaError
from eqarea.flux import Flux
from eqarea.profile import PiecewiseProfile
from eqarea.solver import Shock, SolutionCurve, solve_at_time
from eqarea.validation import characteristic_speed_bound


@dataclass
class ShockPath:
    t: list[float] = field(default_factory=list)
    x: list[float] = field(default_factory=list)
    shocks: list[Shock] = field(default_factory=list)

    def append(self, t: float, shock: Shock) -> None:
        self.t.append(t)
        self.x.append(shock.x)
        self.shocks.append(shock)

    @property
    def points(self) -> np.ndarray:
        """``(k, 2)`` array of ``(x, t)`` pairs."""
        return np.column_stack([self.x, self.t])

    def __len__(self):
        return len(self.t)


@dataclass(frozen=True)
class MergeEvent:
    t_before: float
    t_after: float
    merged: int
    into: int


@dataclass
class ShockPathSet:
    times: np.ndarray
    paths: list[ShockPath]
    merge_events: list[MergeEvent]
    counts: list[int] = field(default_factory=list)


def _solve(t, flux, profile, n_points, solve_kwargs):
    try:
        return solve_at_time(flux, profile, t, n_points, **solve_kwargs)
    except EqualAreaError as exc:
        raise type(exc)(f"solve failed at t={t!r}: {exc}") from exc


def link_shocks(times, slices: list[list[Shock]], radius: float) -> tuple[list[ShockPath], list[MergeEvent]]:
    """Chain shocks of consecutive slices into paths by nearest-x matching.

    A shock of the earlier slice left without a partner, but within
    ``radius`` of a shock that continues another path, is recorded as
    merging into that path.
    """
    paths: list[ShockPath] = []
    merges: list[MergeEvent] = []
    active: list[int] = []  # path index of each shock in the previous slice
    prev: list[Shock] = []
    for k, (t, shocks) in enumerate(zip(times, slices)):
        owner = [-1] * len(shocks)
        pairs = sorted((abs(p.x - s.x), i, j)
                       for i, p in enumerate(prev) for j, s in enumerate(shocks)
                       if abs(p.x - s.x) <= radius)
        used_prev: set[int] = set()
        for _, i, j in pairs:
            if i in used_prev or owner[j] >= 0:
                continue
            used_prev.add(i)
            owner[j] = active[i]
        for j, shock in enumerate(shocks):
            if owner[j] < 0:
                paths.append(ShockPath())
                owner[j] = len(paths) - 1
            paths[owner[j]].append(float(t), shock)
        for i, p in enumerate(prev):
            if i in used_prev or not shocks:
                continue
            dist = [abs(p.x - s.x) for s in shocks]
            j = int(np.argmin(dist))
            if dist[j] <= radius:
                merges.append(MergeEvent(float(times[k - 1]), float(t), active[i], owner[j]))
        active, prev = owner, list(shocks)
    return paths, merges


def sweep(flux: Flux, profile: PiecewiseProfile, t_start: float, t_end: float,
          n_times: int, n_points: int = 1000, jobs: int = 1, **solve_kwargs) -> ShockPathSet:
    """Solve at ``n_times`` uniformly spaced times and link the shocks."""
    if not 0 <= t_start < t_end:
        raise ValueError("need 0 <= t_start < t_end")
    if n_times < 2:
        raise ValueError("n_times must be at least 2")
    times = np.linspace(t_start, t_end, n_times)
    work = partial(_solve, flux=flux, profile=profile, n_points=n_points,
                   solve_kwargs=solve_kwargs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solutions: list[SolutionCurve] = list(pool.map(work, times))
    else:
        solutions = [work(t) for t in times]

    radius = 2.0 * (times[1] - times[0]) * characteristic_speed_bound(flux, profile)
    slices = [sol.shocks for sol in solutions]
    paths, merges = link_shocks(times, slices, radius)
    return ShockPathSet(times, paths, merges, [len(s) for s in slices])
