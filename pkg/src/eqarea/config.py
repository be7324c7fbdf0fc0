"""Flat ``key = value`` run configuration with dotted keys.

Example::

    # gaussian bumps under Burgers
    flux.name = burgers
    profile.name = gaussian_triple
    profile.n_points = 1000
    solve.t = 4.25

Values are read as JSON when they parse as JSON (numbers, lists, objects)
and as bare strings otherwise.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from eqarea.errors import ConfigurationError
from eqarea.flux import Flux, builtin_flux, expression_flux
from eqarea.profile import (
    BUILTIN_PROFILES, PiecewiseProfile, builtin_profile, expression_profile)

DEFAULTS: dict[str, Any] = {
    "flux.name": "burgers",
    "flux.range": None,
    "flux.expr": None,
    "flux.deriv_expr": None,
    "flux.second_deriv_expr": None,
    "flux.convexity": None,
    "profile.name": "gaussian_triple",
    "profile.params": {},
    "profile.segments": None,
    "profile.n_points": 1000,
    "profile.jump_subpoints": 64,
    "solver.root_tol": 1e-14,
    "solver.area_tol": None,
    "solve.t": 4.25,
    "godunov.cells": 4000,
    "godunov.cfl": 0.9,
    "validate.dt": None,
    "validate.rh_tol": 1e-2,
    "validate.reference_cells": 0,
    "sweep.t_start": 0.0,
    "sweep.t_end": 10.0,
    "sweep.n_times": 50,
    "sweep.jobs": 1,
    "convergence.n_list": [250, 500, 1000, 2000],
    "output.dir": None,
}


def _parse_value(text: str) -> Any:
    text = text.strip()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


class ConfigValues(dict):
    """Parsed settings that remember the ``source:line`` each key came from."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.origin: dict[str, str] = {}


def parse_config_text(text: str, source: str = "<config>") -> ConfigValues:
    values = ConfigValues()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(value)
        values.origin[key] = f"{source}:{lineno}"
    return values


def load_config(path: str | Path) -> ConfigValues:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"{path}: cannot read config: {exc.strerror}") from None
    return parse_config_text(text, str(path))


@dataclass
class RunConfig:
    flux: Flux
    profile: PiecewiseProfile
    n_points: int = 1000
    jump_subpoints: int = 64
    root_tol: float = 1e-14
    area_tol: float | None = None
    params: dict[str, Any] = field(default_factory=dict)
    out_dir: Path = Path(".")

    @property
    def solve_kwargs(self) -> dict[str, Any]:
        return dict(n_points=self.n_points, jump_subpoints=self.jump_subpoints,
                    root_tol=self.root_tol, area_tol=self.area_tol)


def _positive(values, key, kind=float):
    value = values[key]
    try:
        value = kind(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{key}: expected a {kind.__name__}, got {values[key]!r}") from None
    if value <= 0:
        raise ConfigurationError(f"{key}: must be positive")
    return value


def _anchor(values: dict[str, Any], keys: tuple[str, ...], exc: Exception) -> ConfigurationError:
    origin = getattr(values, "origin", {})
    where = next((origin[k] for k in keys if k in origin), None)
    return ConfigurationError(f"{where}: {exc}" if where else str(exc))


def build_run_config(values: dict[str, Any], default_out: str | Path = ".") -> RunConfig:
    """Validate merged key/value settings and build the flux and profile.

    Errors name the config line of the offending key when ``values`` came
    from :func:`parse_config_text`.
    """
    try:
        return _build(values, default_out)
    except (ConfigurationError, ValueError, TypeError) as exc:
        keys = getattr(exc, "config_keys", ())
        raise _anchor(values, keys, exc) from None


@contextmanager
def _keys(*keys):
    """Tag errors raised inside the block with the settings they concern."""
    try:
        yield
    except Exception as exc:
        if not hasattr(exc, "config_keys"):
            exc.config_keys = keys
        raise


def _build(values: dict[str, Any], default_out: str | Path) -> RunConfig:
    unknown = set(values) - set(DEFAULTS)
    if unknown:
        raise ConfigurationError(f"unknown keys: {sorted(unknown)}")
    v = {**DEFAULTS, **values}

    with _keys("flux.range"):
        frange = tuple(v["flux.range"]) if v["flux.range"] is not None else None
    if v["flux.expr"] is not None:
        with _keys("flux.expr", "flux.deriv_expr", "flux.second_deriv_expr", "flux.convexity"):
            missing = [k for k in ("flux.deriv_expr", "flux.second_deriv_expr",
                                   "flux.convexity") if v[k] is None]
            if missing:
                raise ConfigurationError(f"custom flux needs {missing}")
            flux = expression_flux(str(v["flux.expr"]), str(v["flux.deriv_expr"]),
                                   str(v["flux.second_deriv_expr"]), v["flux.convexity"],
                                   frange or (-1.0, 1.0))
    else:
        with _keys("flux.name", "flux.range"):
            flux = builtin_flux(str(v["flux.name"]), frange)

    if v["profile.segments"] is not None:
        with _keys("profile.segments"):
            profile = expression_profile(v["profile.segments"])
    else:
        with _keys("profile.params", "profile.name"):
            if not isinstance(v["profile.params"], dict):
                raise ConfigurationError("profile.params must be a JSON object")
        name = str(v["profile.name"])
        blame = ("profile.params",) if name in BUILTIN_PROFILES else ("profile.name",)
        with _keys(*blame):
            profile = builtin_profile(name, **v["profile.params"])

    with _keys("profile.n_points"):
        n_points = _positive(v, "profile.n_points", int)
        if n_points < 16:
            raise ConfigurationError("profile.n_points must be at least 16")
    with _keys("profile.jump_subpoints"):
        jump_subpoints = _positive(v, "profile.jump_subpoints", int)
        if jump_subpoints < 2:
            raise ConfigurationError("profile.jump_subpoints must be at least 2")
    with _keys("solver.root_tol"):
        root_tol = _positive(v, "solver.root_tol")
    with _keys("solver.area_tol"):
        area_tol = None if v["solver.area_tol"] is None else _positive(v, "solver.area_tol")

    params = {k: val for k, val in v.items()
              if k.split(".")[0] in ("solve", "godunov", "validate", "sweep", "convergence")}
    out = v["output.dir"] if v["output.dir"] is not None else default_out
    return RunConfig(flux, profile, n_points, jump_subpoints, root_tol, area_tol,
                     params, Path(out))
