"""Equal-area construction of the entropy solution at a fixed time.

The sheared initial curve is folded wherever characteristics have crossed.
Each fold is removed by a vertical cut placed so that the two lobes it cuts
off have equal area; the cut loop restarts from the left until the curve is
a single-valued graph.  The solution at time ``t`` is computed directly,
without marching in time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from eqarea.characteristics import PLATEAU_TOL, count_x_extrema, shear_polyline, x_extrema
from eqarea.errors import MalformedFoldError, NonTerminationError, NumericalError
from eqarea.flux import Flux, rankine_hugoniot_speed
from eqarea.geometry import Lobe, Point, Polyline, area_under_graph, find_lobe
from eqarea.profile import PiecewiseProfile, initial_area, sample_gamma0

logger = logging.getLogger(__name__)

DEFAULT_ROOT_TOL = 1e-14
MAX_SECANT_ITERS = 60
EXTRA_CUTS = 8


@dataclass(frozen=True)
class SignificantPoints:
    """Indices and abscissae that bracket the first fold of a curve.

    ``tau1`` is the first local maximum of x along the curve (``beta``),
    ``tau2`` the first local minimum after it (``alpha``) and ``tau3`` the
    next local maximum, if any.  ``gamma = min(beta, x[tau3])``.
    """

    tau1: int
    tau2: int
    tau3: int | None
    beta: float
    alpha: float
    gamma: float

    def __post_init__(self):
        if not (self.alpha < self.gamma <= self.beta and self.tau1 < self.tau2):
            raise MalformedFoldError(f"inconsistent significant points {self}")


@dataclass(frozen=True)
class Shock:
    x: float
    u_minus: float
    u_plus: float
    rh_speed: float
    balanced_area: float
    secant_iters: int
    s_curve_length: float = 0.0
    case: int = 1

    @property
    def height(self) -> float:
        return abs(self.u_minus - self.u_plus)


@dataclass
class SolutionCurve:
    t: float
    curve: Polyline
    shocks: list[Shock]
    area_drift: float
    epsilon_estimate: float
    cuts_performed: int
    initial_area: float
    cuts: list[Shock] = field(default_factory=list)
    n_points: int = 1000
    jump_subpoints: int = 64
    root_tol: float = DEFAULT_ROOT_TOL
    area_tol: float = 1e-9
    # area of the sampled initial polyline minus the exact initial area
    sampling_error: float = 0.0

    @property
    def conserved(self) -> bool:
        return self.area_drift <= self.area_tol

    def __call__(self, x):
        return evaluate(self, x)

    def displacement_estimates(self) -> list[float]:
        return [shock_displacement_estimate(self.epsilon_estimate, s.s_curve_length, s.height)
                for s in self.shocks]


# {{{ significant points and lobe balance

def find_significant_points(curve: Polyline) -> SignificantPoints | None:
    """Significant points of the first fold, or ``None`` if ``curve`` is a graph."""
    maxima, minima = x_extrema(curve.x)
    if maxima.size == 0:
        return None
    tau1 = int(maxima[0])
    later_minima = minima[minima > tau1]
    if later_minima.size == 0:
        raise MalformedFoldError(f"no local minimum of x after the maximum at vertex {tau1}")
    tau2 = int(later_minima[0])
    later_maxima = maxima[maxima > tau2]
    tau3 = int(later_maxima[0]) if later_maxima.size else None
    beta = float(curve.x[tau1])
    alpha = float(curve.x[tau2])
    gamma = beta if tau3 is None else min(beta, float(curve.x[tau3]))
    return SignificantPoints(tau1, tau2, tau3, beta, alpha, gamma)


def _lobes(curve: Polyline, sig: SignificantPoints, x: float) -> tuple[Lobe, Lobe]:
    return find_lobe(curve, x, sig.tau1), find_lobe(curve, x, sig.tau2)


def area_balance(curve: Polyline, sig: SignificantPoints, x: float) -> float:
    """``p2(x) - p1(x)``: lower-sheet lobe area minus upper-sheet lobe area."""
    upper, lower = _lobes(curve, sig, x)
    return lower.area - upper.area


def _bracketed_secant(fn, lo: float, hi: float, start: float,
                      tol: float) -> tuple[float, int]:
    """Root of increasing ``fn`` in ``[lo, hi]`` with ``fn(lo) < 0 <= fn(hi)``.

    Secant steps from ``(start, hi)``; any step leaving the current bracket
    is replaced by bisection, and after ``MAX_SECANT_ITERS`` steps bisection
    takes over completely.
    """
    f_hi = fn(hi)
    if f_hi == 0.0:
        return hi, 1
    x_prev, f_prev = hi, f_hi
    x_cur, f_cur = start, fn(start)
    iters = 2
    if f_cur < 0:
        lo = x_cur
    else:
        hi = x_cur
    if f_cur == 0.0:
        return x_cur, iters

    def close(a, b):
        return abs(a - b) <= tol * max(1.0, abs(b))

    while iters < MAX_SECANT_ITERS:
        if f_cur != f_prev:
            x_new = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
            if close(x_new, x_cur):
                return min(max(x_new, lo), hi), iters
        else:
            x_new = 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        f_new = fn(x_new)
        iters += 1
        if f_new < 0:
            lo = x_new
        else:
            hi = x_new
        if f_new == 0.0 or close(x_new, x_cur) or close(lo, hi):
            return x_new, iters
        x_prev, f_prev, x_cur, f_cur = x_cur, f_cur, x_new, f_new

    logger.debug("secant did not converge; bisecting on [%r, %r]", lo, hi)
    while not close(lo, hi):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = fn(mid)
        iters += 1
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), iters

# }}}


# {{{ cutting

def _splice(curve: Polyline, pieces: list) -> Polyline:
    xs, ys, xis, prs, cids = [], [], [], [], []
    for piece in pieces:
        if isinstance(piece, slice):
            xs.append(curve.x[piece])
            ys.append(curve.y[piece])
            xis.append(curve.xi[piece])
            prs.append(curve.piece[piece])
            cids.append(curve.cut_id[piece])
        else:
            point, cut = piece
            xs.append([point.x])
            ys.append([point.y])
            xis.append([np.nan])
            prs.append([-1])
            cids.append([cut])
    return Polyline(np.concatenate(xs), np.concatenate(ys), xi=np.concatenate(xis),
                    piece=np.concatenate(prs), cut_id=np.concatenate(cids))


def equal_area_cut(curve: Polyline, sig: SignificantPoints,
                   root_tol: float = DEFAULT_ROOT_TOL,
                   cut_index: int = 0) -> tuple[Polyline, Shock]:
    """Remove the first fold of ``curve`` by one equal-area cut.

    Case 1, ``p(gamma) >= 0``: the cut ``delta`` solves ``p1 = p2`` in
    ``(alpha, gamma]`` and both lobes are replaced by one vertical segment.

    Case 2, ``p(gamma) < 0``: the lower lobe is too small to balance at any
    cut left of ``gamma``.  ``delta`` in ``(gamma, beta)`` solves
    ``p1(delta) = p2(gamma)``, and each of the two lobes is replaced by its
    own vertical chord.  The branch piece between the chords survives and
    is handled on the next pass.
    """
    if root_tol <= 0:
        raise ValueError("root_tol must be positive")
    alpha, beta, gamma = sig.alpha, sig.beta, sig.gamma

    p_gamma = area_balance(curve, sig, gamma)
    if p_gamma >= 0.0:
        case = 1
        start = alpha + 1e-3 * (gamma - alpha)
        delta, iters = _bracketed_secant(lambda x: area_balance(curve, sig, x),
                                         alpha, gamma, start, root_tol)
        upper, lower = _lobes(curve, sig, delta)
        if abs(upper.end.y - lower.start.y) > 1e-9 * (1.0 + abs(upper.end.y)):
            raise MalformedFoldError(f"lobes at x={delta!r} do not share a crossing")
        new = _splice(curve, [slice(0, upper.keep_until), (upper.start, cut_index),
                              (lower.end, cut_index), slice(lower.resume_from, None)])
        u_minus, u_plus = upper.start.y, lower.end.y
        area = 0.5 * (upper.area + lower.area)
        length = upper.arc_length + lower.arc_length
    else:
        case = 2
        lower = find_lobe(curve, gamma, sig.tau2)
        target = lower.area
        start = beta - 1e-3 * (beta - gamma)
        delta, iters = _bracketed_secant(
            lambda x: target - find_lobe(curve, x, sig.tau1).area,
            gamma, beta, start, root_tol)
        upper = find_lobe(curve, delta, sig.tau1)
        if upper.resume_from > lower.keep_until:
            raise MalformedFoldError("case-2 lobes overlap")
        new = _splice(curve, [slice(0, upper.keep_until), (upper.start, cut_index),
                              (upper.end, cut_index),
                              slice(upper.resume_from, lower.keep_until),
                              (lower.start, cut_index), (lower.end, cut_index),
                              slice(lower.resume_from, None)])
        u_minus, u_plus = upper.start.y, upper.end.y
        area = 0.5 * (upper.area + target)
        length = upper.arc_length

    shock = Shock(float(delta), float(u_minus), float(u_plus), 0.0, float(area), iters,
                  float(length), case)
    logger.debug("cut %d: case %d at x=%.17g after %d iterations", cut_index, case, delta, iters)
    return new, shock

# }}}


# {{{ full solve

def _pad_far_ends(curve: Polyline) -> Polyline:
    """Extend the end vertices horizontally past the curve's x-range.

    Outside the support the exact curve is a horizontal ray, so this only
    makes the far-end crossings of every possible cut line explicit.
    """
    x = curve.x
    span = float(x.max() - x.min())
    pad = 1.0 + 0.05 * span
    pieces = []
    if x.min() < x[0] - PLATEAU_TOL:
        pieces.append((Point(float(x.min()) - pad, float(curve.y[0])), -1))
    pieces.append(slice(None))
    if x.max() > x[-1] + PLATEAU_TOL:
        pieces.append((Point(float(x.max()) + pad, float(curve.y[-1])), -1))
    if len(pieces) == 1:
        return curve
    return _splice(curve, pieces)


def polygonal_error_bound(curve: Polyline) -> float:
    """Bound on the distance between a smooth curve and its polygon.

    For an edge of length ``L`` on a curve with curvature ``k`` the chord
    deviates by at most ``k L^2 / 8``.  Curvature at a vertex is estimated
    as the turning angle over the mean adjacent edge length, using only
    vertices whose neighbours come from the same smooth piece.
    """
    x, y, piece = curve.x, curve.y, curve.piece
    if x.size < 3:
        return 0.0
    ex, ey = np.diff(x), np.diff(y)
    lengths = np.hypot(ex, ey)
    heading = np.arctan2(ey, ex)
    turn = np.abs(np.angle(np.exp(1j * np.diff(heading))))
    kappa = turn / (0.5 * (lengths[:-1] + lengths[1:]))
    smooth = (piece[:-2] == piece[1:-1]) & (piece[2:] == piece[1:-1])
    kappa = np.where(smooth, kappa, 0.0)
    # vertex curvature padded with zeros at the two end vertices
    k_vertex = np.concatenate(([0.0], kappa, [0.0]))
    k_edge = np.maximum(k_vertex[:-1], k_vertex[1:])
    return float(np.max(lengths**2 * k_edge / 8.0))


def _extract_shocks(flux: Flux, curve: Polyline, cuts: list[Shock]) -> list[Shock]:
    x = curve.x
    breaks = np.flatnonzero(np.abs(np.diff(x)) > PLATEAU_TOL) + 1
    starts = np.concatenate(([0], breaks))
    stops = np.concatenate((breaks, [x.size]))
    shocks = []
    for i0, i1 in zip(starts, stops):
        if i1 - i0 < 2:
            continue
        ids = curve.cut_id[i0:i1]
        if ids.max() < 0:
            continue
        record = cuts[int(ids.max())]
        u_minus, u_plus = float(curve.y[i0]), float(curve.y[i1 - 1])
        shocks.append(Shock(
            x=float(x[i0]), u_minus=u_minus, u_plus=u_plus,
            rh_speed=rankine_hugoniot_speed(flux, u_minus, u_plus),
            balanced_area=record.balanced_area, secant_iters=record.secant_iters,
            s_curve_length=record.s_curve_length, case=record.case))
    return shocks


def resolve_folds(curve: Polyline, root_tol: float = DEFAULT_ROOT_TOL,
                  max_cuts: int | None = None) -> tuple[Polyline, list[Shock]]:
    """Apply equal-area cuts until ``curve`` is single-valued in x.

    Both far ends of ``curve`` must be increasing in x.  Returns the final
    curve and one record per cut, in the order the cuts were made.
    """
    if max_cuts is None:
        max_cuts = count_x_extrema(curve) // 2 + EXTRA_CUTS
    cuts: list[Shock] = []
    while True:
        sig = find_significant_points(curve)
        if sig is None:
            return curve, cuts
        if len(cuts) >= max_cuts:
            raise NonTerminationError(
                f"more than {max_cuts} cuts; the fold structure is not shrinking")
        curve, cut = equal_area_cut(curve, sig, root_tol, cut_index=len(cuts))
        cuts.append(cut)


def solve_at_time(flux: Flux, profile: PiecewiseProfile, t: float, n_points: int = 1000,
                  jump_subpoints: int = 64, root_tol: float = DEFAULT_ROOT_TOL,
                  area_tol: float | None = None) -> SolutionCurve:
    """Entropy solution of ``u_t + f(u)_x = 0, u(x, 0) = h(x)`` at time ``t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    gamma0 = sample_gamma0(profile, n_points, jump_subpoints)
    sheared = shear_polyline(flux, gamma0, t).vertices
    area0 = initial_area(profile)
    if area_tol is None:
        area_tol = 1e-9 * (1.0 + abs(area0))

    max_cuts = count_x_extrema(sheared) // 2 + EXTRA_CUTS
    try:
        curve, cuts = resolve_folds(_pad_far_ends(sheared), root_tol, max_cuts)
    except NonTerminationError as exc:
        raise NonTerminationError(f"t={t!r}: {exc}") from None

    drift = abs(area_under_graph(curve) - area0)
    sampling = area_under_graph(gamma0) - area0
    if drift > area_tol:
        logger.warning("area drift %.3g exceeds tolerance %.3g at t=%g "
                       "(sampling the initial graph accounts for %.3g)",
                       drift, area_tol, t, abs(sampling))
    return SolutionCurve(
        t=float(t), curve=curve, shocks=_extract_shocks(flux, curve, cuts),
        area_drift=drift, epsilon_estimate=polygonal_error_bound(sheared),
        cuts_performed=len(cuts), initial_area=area0, cuts=cuts, n_points=n_points,
        jump_subpoints=jump_subpoints, root_tol=root_tol, area_tol=area_tol,
        sampling_error=sampling)


def evaluate(solution: SolutionCurve, x):
    """Value of the solution at ``x``; right limit at shocks, zero off the curve."""
    xs, ys = solution.curve.x, solution.curve.y
    xq = np.asarray(x, dtype=float)
    j = np.searchsorted(xs, xq, side="right")
    inside = (j > 0) & (j < xs.size)
    jj = np.clip(j, 1, xs.size - 1)
    x0, x1 = xs[jj - 1], xs[jj]
    y0, y1 = ys[jj - 1], ys[jj]
    with np.errstate(invalid="ignore", divide="ignore"):
        w = np.where(x1 > x0, (xq - x0) / (x1 - x0), 0.0)
    out = np.where(inside, y0 + w * (y1 - y0), 0.0)
    # exactly on the last vertex
    out = np.where(xq == xs[-1], ys[-1], out)
    return float(out) if out.ndim == 0 else out


def shock_displacement_estimate(epsilon: float, s_curve_length: float,
                                shock_height: float) -> float:
    """Shock displacement ``epsilon * l / s`` implied by a polygonal error ``epsilon``."""
    if shock_height <= 1e-12:
        raise NumericalError("degenerate shock: height must exceed 1e-12")
    return epsilon * s_curve_length / shock_height

# }}}
