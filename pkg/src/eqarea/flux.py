r"""Flux functions for the scalar conservation law

.. math::

    u_t + f(u)_x = 0.

A :class:`Flux` bundles :math:`f`, :math:`f'` and :math:`f''` together with a
declared convexity class, which is verified by sampling when the flux is
constructed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from eqarea.errors import ConfigurationError
from eqarea.expressions import Expression

DEGENERATE_JUMP = 1e-12


class Convexity(str, enum.Enum):
    STRICTLY_CONVEX = "strictly_convex"
    STRICTLY_CONCAVE = "strictly_concave"


@dataclass(frozen=True)
class Flux:
    """Flux :math:`f` with analytic first and second derivatives.

    ``deriv`` is the characteristic speed. No numerical differentiation is
    ever substituted for it: the characteristic shear is driven by ``deriv``
    alone, so any error there would directly distort the geometry.
    """

    name: str
    eval: Callable
    deriv: Callable
    second_deriv: Callable
    convexity: Convexity
    u_range: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "convexity", Convexity(self.convexity))
        lo, hi = map(float, self.u_range)
        if not lo < hi:
            raise ConfigurationError(f"flux range must satisfy u_lo < u_hi, got {self.u_range}")
        object.__setattr__(self, "u_range", (lo, hi))
        self.check_convexity()

    def check_convexity(self, samples: int = 1001) -> None:
        u = np.linspace(*self.u_range, samples)
        d2 = np.asarray(self.second_deriv(u), dtype=float) * np.ones_like(u)
        if not np.all(np.isfinite(d2)):
            raise ConfigurationError(f"flux {self.name!r}: second derivative not finite on range")
        if self.convexity is Convexity.STRICTLY_CONVEX:
            ok = np.all(d2 > 0)
        else:
            ok = np.all(d2 < 0)
        if not ok:
            raise ConfigurationError(
                f"flux {self.name!r} declared {self.convexity.value} but f'' changes sign "
                f"or vanishes on {self.u_range}")

    @property
    def is_convex(self) -> bool:
        return self.convexity is Convexity.STRICTLY_CONVEX

    def max_speed(self, u_lo: float, u_hi: float) -> float:
        """Largest :math:`|f'(u)|` for ``u`` in ``[u_lo, u_hi]``.

        :math:`f'` is monotone, so the extremes sit at the endpoints.
        """
        return float(max(abs(self.deriv(float(u_lo))), abs(self.deriv(float(u_hi)))))


def rankine_hugoniot_speed(flux: Flux, u_minus: float, u_plus: float) -> float:
    """Shock speed :math:`(f(u^+) - f(u^-)) / (u^+ - u^-)`.

    For a vanishing jump the limit :math:`f'((u^- + u^+)/2)` is returned.
    """
    if abs(u_plus - u_minus) < DEGENERATE_JUMP:
        return float(flux.deriv(0.5 * (u_plus + u_minus)))
    return float((flux.eval(u_plus) - flux.eval(u_minus)) / (u_plus - u_minus))


# {{{ built-in fluxes

def _burgers(u):
    return 0.5 * np.asarray(u) ** 2


def _burgers_deriv(u):
    return np.asarray(u) * 1.0


def _burgers_second(u):
    return np.ones_like(np.asarray(u, dtype=float)) * 1.0


def _lwr(u):
    u = np.asarray(u)
    return u * (1.0 - u)


def _lwr_deriv(u):
    return 1.0 - 2.0 * np.asarray(u)


def _lwr_second(u):
    return np.full_like(np.asarray(u, dtype=float), -2.0)


class _Builtin:
    """Picklable handle on one of the module-level flux callables."""

    def __init__(self, fn_name: str):
        self.fn_name = fn_name

    def __call__(self, u):
        out = globals()[self.fn_name](u)
        return float(out) if np.ndim(out) == 0 else out

    def __repr__(self):
        return f"<flux {self.fn_name}>"


BUILTIN_FLUXES = ("burgers", "lwr_traffic")


def builtin_flux(name: str, u_range: tuple[float, float] | None = None) -> Flux:
    """Return one of the built-in fluxes.

    ``burgers``
        :math:`f(u) = u^2/2`, strictly convex.
    ``lwr_traffic``
        :math:`f(u) = u(1 - u)`, strictly concave (Greenshields).
    """
    if name == "burgers":
        return Flux("burgers", _Builtin("_burgers"), _Builtin("_burgers_deriv"),
                    _Builtin("_burgers_second"), Convexity.STRICTLY_CONVEX,
                    u_range or (-1.0, 1.0))
    if name == "lwr_traffic":
        return Flux("lwr_traffic", _Builtin("_lwr"), _Builtin("_lwr_deriv"),
                    _Builtin("_lwr_second"), Convexity.STRICTLY_CONCAVE,
                    u_range or (0.0, 1.0))
    raise ConfigurationError(f"unknown flux {name!r}; expected one of {BUILTIN_FLUXES}")

# }}}


def expression_flux(expr: str, deriv_expr: str, second_deriv_expr: str,
                    convexity: str | Convexity,
                    u_range: tuple[float, float] = (-1.0, 1.0),
                    name: str = "custom") -> Flux:
    """Build a :class:`Flux` from expression strings in the variable ``u``."""
    return Flux(name, Expression(expr), Expression(deriv_expr),
                Expression(second_deriv_expr), Convexity(convexity), u_range)
