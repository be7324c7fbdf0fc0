"""Equal-area solutions of one-dimensional scalar conservation laws."""

from eqarea.characteristics import (
    ShearedCurve, apply_shear, count_x_extrema, shear_polyline)
from eqarea.errors import (
    ConfigurationError, EqualAreaError, MalformedFoldError, NonTerminationError,
    NumericalError, UnmatchedShockError)
from eqarea.flux import (
    Convexity, Flux, builtin_flux, expression_flux, rankine_hugoniot_speed)
from eqarea.geometry import (
    Point, Polyline, area_under_graph, lobe_area, polygon_area, s_curve_signed_area,
    triangle_signed_area)
from eqarea.profile import (
    PiecewiseProfile, Segment, box, builtin_profile, expression_profile,
    gaussian_triple, hat, initial_area, riemann_step, sample_gamma0)
from eqarea.solver import (
    Shock, SignificantPoints, SolutionCurve, area_balance, equal_area_cut, evaluate,
    find_significant_points, shock_displacement_estimate, solve_at_time)

__version__ = "0.1.0"

__all__ = (
    "ShearedCurve", "apply_shear", "count_x_extrema", "shear_polyline",
    "ConfigurationError", "EqualAreaError", "MalformedFoldError",
    "NonTerminationError", "NumericalError", "UnmatchedShockError",
    "Convexity", "Flux", "builtin_flux", "expression_flux", "rankine_hugoniot_speed",
    "Point", "Polyline", "area_under_graph", "lobe_area", "polygon_area",
    "s_curve_signed_area", "triangle_signed_area",
    "PiecewiseProfile", "Segment", "box", "builtin_profile", "expression_profile",
    "gaussian_triple", "hat", "initial_area", "riemann_step", "sample_gamma0",
    "Shock", "SignificantPoints", "SolutionCurve", "area_balance", "equal_area_cut",
    "evaluate", "find_significant_points", "shock_displacement_estimate",
    "solve_at_time",
)
