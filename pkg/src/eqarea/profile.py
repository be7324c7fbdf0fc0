"""Piecewise smooth initial data with compact support and the initial curve.

The initial curve is the graph of ``h`` with every discontinuity bridged by
a vertical run of vertices.  After the characteristic shear these runs turn
into rarefaction fans or into the steep side of a fold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from eqarea.errors import ConfigurationError
from eqarea.expressions import Expression
from eqarea.geometry import Polyline

JUMP_TOL = 1e-14
MARGIN_FRACTION = 0.05


@dataclass(frozen=True)
class Segment:
    a: float
    b: float
    func: Callable

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float) * np.ones_like(
            np.asarray(x, dtype=float))


class PiecewiseProfile:
    """Initial condition ``h`` made of smooth pieces tiling its support.

    ``h`` is zero outside ``[segments[0].a, segments[-1].b]``.
    """

    def __init__(self, segments: Sequence[Segment], name: str = "custom"):
        segments = list(segments)
        if not segments:
            raise ConfigurationError("profile needs at least one segment")
        for seg in segments:
            if not seg.a < seg.b:
                raise ConfigurationError(f"empty segment [{seg.a}, {seg.b}]")
        for left, right in zip(segments, segments[1:]):
            if left.b != right.a:
                raise ConfigurationError(
                    f"segments must tile the support: {left.b} != {right.a}")
        self.segments = segments
        self.name = name
        for seg in segments:
            vals = seg(np.linspace(seg.a, seg.b, 33))
            if not np.all(np.isfinite(vals)):
                raise ConfigurationError(f"profile {name!r} is not finite on [{seg.a}, {seg.b}]")

    def __repr__(self):
        return f"PiecewiseProfile({self.name!r}, support={self.support})"

    @property
    def support(self) -> tuple[float, float]:
        return self.segments[0].a, self.segments[-1].b

    @property
    def breakpoints(self) -> list[float]:
        return [self.segments[0].a] + [seg.b for seg in self.segments]

    def limits(self, x: float) -> tuple[float, float]:
        """Left and right limits of ``h`` at breakpoint ``x``."""
        bps = self.breakpoints
        k = bps.index(x)
        left = 0.0 if k == 0 else float(self.segments[k - 1](x))
        right = 0.0 if k == len(self.segments) else float(self.segments[k](x))
        return left, right

    @property
    def jump_points(self) -> list[float]:
        out = []
        for bp in self.breakpoints:
            left, right = self.limits(bp)
            if abs(left - right) > JUMP_TOL:
                out.append(bp)
        return out

    def __call__(self, x):
        """Evaluate ``h``; right-continuous at breakpoints."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for seg in self.segments:
            mask = (x >= seg.a) & (x < seg.b)
            if seg is self.segments[-1]:
                mask |= x == seg.b
            if np.any(mask):
                out[mask] = seg(x[mask])
        return out if out.ndim else float(out)

    def value_range(self, samples: int = 2001) -> tuple[float, float]:
        lo = hi = 0.0
        for seg in self.segments:
            vals = seg(np.linspace(seg.a, seg.b, samples))
            lo, hi = min(lo, float(vals.min())), max(hi, float(vals.max()))
        return lo, hi


# {{{ initial curve

def sample_gamma0(profile: PiecewiseProfile, n_points: int = 1000,
                  jump_subpoints: int = 64) -> Polyline:
    """Polygonal approximation of the initial curve.

    ``n_points`` parameters are spread uniformly over the support widened by
    5% on each side.  Every breakpoint of the profile is snapped onto the
    nearest free sample; at a jump that sample becomes a vertical run of
    ``jump_subpoints`` vertices spanning the jump.
    """
    if n_points < 16:
        raise ConfigurationError("n_points must be at least 16")
    if jump_subpoints < 2:
        raise ConfigurationError("jump_subpoints must be at least 2")
    x_min, x_max = profile.support
    margin = MARGIN_FRACTION * (x_max - x_min)
    xi = np.linspace(x_min - margin, x_max + margin, n_points)
    spacing = xi[1] - xi[0]

    bps = profile.breakpoints
    snapped: dict[int, float] = {}
    prev = 0
    for bp in bps:
        idx = max(int(round((bp - xi[0]) / spacing)), prev + 1)
        if idx >= n_points - 1:
            raise ConfigurationError("too many breakpoints for n_points samples")
        snapped[idx] = bp
        prev = idx
    for idx, bp in snapped.items():
        xi[idx] = bp
    jumps = set(profile.jump_points)

    xs, ys, params, pieces = [], [], [], []
    piece = 0
    values = profile(xi)
    for i, s in enumerate(xi):
        if i in snapped:
            piece += 1
            bp = snapped[i]
            left, right = profile.limits(bp)
            if bp in jumps:
                run = np.linspace(left, right, jump_subpoints)
            else:
                run = np.array([float(profile(bp))])
            xs.extend([bp] * run.size)
            ys.extend(run.tolist())
            params.extend([bp] * run.size)
            pieces.extend([piece] * run.size)
            piece += 1
        else:
            xs.append(s)
            ys.append(values[i])
            params.append(s)
            pieces.append(piece)
    return Polyline(np.array(xs), np.array(ys), xi=np.array(params), piece=np.array(pieces))

# }}}


def initial_area(profile: PiecewiseProfile) -> float:
    """Exact (quadrature) value of the conserved integral of ``h``."""
    total = []
    for seg in profile.segments:
        val, _ = integrate.quad(lambda s: float(seg(s)), seg.a, seg.b,
                                epsabs=0.0, epsrel=1e-12, limit=200)
        total.append(val)
    return math.fsum(total)


# {{{ built-in profiles

class Constant:
    def __init__(self, value: float):
        self.value = float(value)

    def __call__(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.value)

    def __repr__(self):
        return f"Constant({self.value})"


class Hat:
    """``height * (1 - |x - center| / half_width)``."""

    def __init__(self, center: float, half_width: float, height: float):
        self.center, self.half_width, self.height = center, half_width, height

    def __call__(self, x):
        return self.height * (1.0 - np.abs(np.asarray(x) - self.center) / self.half_width)


class GaussianTriple:
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return (0.9 * np.exp(-x**2) + 0.7 * np.exp(-(x - 2.0)**2)
                + 0.85 * np.exp(-(x + 2.0)**2))


def box(a: float = -1.0, b: float = 0.0, height: float = 1.0) -> PiecewiseProfile:
    return PiecewiseProfile([Segment(a, b, Constant(height))], name="box")


def hat(center: float = 0.0, half_width: float = 1.0, height: float = 1.0) -> PiecewiseProfile:
    f = Hat(center, half_width, height)
    return PiecewiseProfile([Segment(center - half_width, center, f),
                             Segment(center, center + half_width, f)], name="hat")


def gaussian_triple() -> PiecewiseProfile:
    """Three Gaussian bumps centred at -2, 0, 2, cut off outside [-10, 10]."""
    return PiecewiseProfile([Segment(-10.0, 10.0, GaussianTriple())], name="gaussian_triple")


def riemann_step(u_left: float = 1.0, u_right: float = 0.0, left: float = -1.0,
                 middle: float = 0.0, right: float | None = None) -> PiecewiseProfile:
    """Two constant states meeting at ``middle``, truncated to compact support.

    With the defaults this is ``h = 1`` on ``[-1, 0]``.  ``u_right`` occupies
    ``[middle, right]`` (``right`` defaults to ``2*middle - left``) and is
    dropped when zero.
    """
    segs = [Segment(left, middle, Constant(u_left))]
    if u_right != 0.0:
        if right is None:
            right = 2.0 * middle - left
        segs.append(Segment(middle, right, Constant(u_right)))
    return PiecewiseProfile(segs, name="riemann_step")


BUILTIN_PROFILES = {
    "box": box,
    "hat": hat,
    "gaussian_triple": gaussian_triple,
    "riemann_step": riemann_step,
}


def builtin_profile(name: str, **params) -> PiecewiseProfile:
    try:
        factory = BUILTIN_PROFILES[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown profile {name!r}; expected one of {sorted(BUILTIN_PROFILES)}") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise ConfigurationError(f"bad parameters for profile {name!r}: {exc}") from None


def expression_profile(segments: Sequence[dict]) -> PiecewiseProfile:
    """Profile from ``[{"a": .., "b": .., "expr": ".."}, ...]`` in variable ``x``."""
    try:
        segs = [Segment(float(s["a"]), float(s["b"]), Expression(str(s["expr"]), "x"))
                for s in segments]
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"segment entries need a, b and expr: {exc}") from None
    return PiecewiseProfile(segs)

# }}}
