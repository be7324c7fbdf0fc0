"""Command-line front end: ``eqarea {solve,slice,godunov,validate,sweep,convergence}``.

Settings come from an optional ``--config`` file of dotted ``key = value``
lines, overridden by ``--<dotted.key> VALUE`` flags and finally by the
command's own flags.  Outputs are CSV files plus a ``key = value`` report,
written to ``--out`` (default ``$EQAREA_OUT_DIR`` or the current directory).
"""

from __future__ import annotations

import argparse
import csv
import os
import statistics
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence

from eqarea.characteristics import shear_polyline
from eqarea.config import (
    DEFAULTS, ConfigValues, RunConfig, _parse_value, build_run_config, load_config)
from eqarea.errors import ConfigurationError, EqualAreaError, NumericalError
from eqarea.godunov import godunov_solve
from eqarea.profile import sample_gamma0
from eqarea.shock_path import sweep
from eqarea.solver import SolutionCurve, solve_at_time
from eqarea.validation import validate

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2

# command flag -> config key
_COMMAND_FLAGS = {
    "solve": {"t": "solve.t", "n_points": "profile.n_points", "root_tol": "solver.root_tol"},
    "slice": {"t": "solve.t", "n_points": "profile.n_points"},
    "godunov": {"t": "solve.t", "cells": "godunov.cells", "cfl": "godunov.cfl"},
    "validate": {"t": "solve.t", "n_points": "profile.n_points", "root_tol": "solver.root_tol",
                 "dt": "validate.dt", "rh_tol": "validate.rh_tol",
                 "reference_cells": "validate.reference_cells"},
    "sweep": {"t_start": "sweep.t_start", "t_end": "sweep.t_end", "n_times": "sweep.n_times",
              "jobs": "sweep.jobs", "n_points": "profile.n_points"},
    "convergence": {"t": "solve.t", "n_list": "convergence.n_list"},
}
_FLAG_TYPES = {"n_points": int, "cells": int, "n_times": int, "jobs": int,
               "reference_cells": int, "n_list": str}


def fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(float(v)) if not isinstance(v, str) else v for v in row])


def write_report(path: Path, items: dict[str, Any]) -> str:
    text = "".join(f"{key} = {fmt(value)}\n" for key, value in items.items())
    path.write_text(text)
    return text


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqarea", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, flags in _COMMAND_FLAGS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--out", help="output directory")
        for flag in flags:
            p.add_argument("--" + flag.replace("_", "-"), dest=flag,
                           type=_FLAG_TYPES.get(flag, float), default=None)
    return parser


def _dotted_overrides(extra: list[str]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    it = iter(extra)
    for token in it:
        if not token.startswith("--"):
            raise ConfigurationError(f"unexpected argument {token!r}")
        key, eq, value = token[2:].partition("=")
        if key not in DEFAULTS:
            raise ConfigurationError(f"unknown option --{key}")
        if not eq:
            value = next(it, None)
            if value is None:
                raise ConfigurationError(f"--{key} needs a value")
        out[key] = _parse_value(value)
    return out


def _config_from_args(args, extra) -> RunConfig:
    values = load_config(args.config) if args.config else ConfigValues()
    overrides = _dotted_overrides(extra)
    for flag, key in _COMMAND_FLAGS[args.command].items():
        value = getattr(args, flag)
        if value is not None:
            overrides[key] = _parse_value(value) if flag == "n_list" else value
    for key, value in overrides.items():
        values[key] = value
        values.origin[key] = "command line"
    if args.out:
        values["output.dir"] = args.out
    return build_run_config(values, os.environ.get("EQAREA_OUT_DIR", "."))


def _solution_report(cfg: RunConfig, sol: SolutionCurve) -> dict[str, Any]:
    iters = [c.secant_iters for c in sol.cuts]
    report = {
        "flux": cfg.flux.name,
        "profile": cfg.profile.name,
        "t": sol.t,
        "n_points": sol.n_points,
        "jump_subpoints": sol.jump_subpoints,
        "root_tol": sol.root_tol,
        "initial_area": sol.initial_area,
        "area_drift": sol.area_drift,
        "area_tol": sol.area_tol,
        "sampling_error": sol.sampling_error,
        "epsilon_estimate": sol.epsilon_estimate,
        "cuts_performed": sol.cuts_performed,
        "shock_count": len(sol.shocks),
        "secant_iters": ",".join(map(str, iters)) or "-",
        "secant_iters_median": float(statistics.median(iters)) if iters else 0.0,
    }
    for k, (shock, dx) in enumerate(zip(sol.shocks, sol.displacement_estimates())):
        report[f"shock.{k}.x"] = shock.x
        report[f"shock.{k}.displacement_estimate"] = dx
    return report


# {{{ commands

def cmd_solve(cfg: RunConfig) -> int:
    sol = solve_at_time(cfg.flux, cfg.profile, float(cfg.params["solve.t"]), **cfg.solve_kwargs)
    write_csv(cfg.out_dir / "solution.csv", ["x", "u"], zip(sol.curve.x, sol.curve.y))
    write_csv(cfg.out_dir / "shocks.csv", ["x", "u_minus", "u_plus", "rh_speed", "secant_iters"],
              ((s.x, s.u_minus, s.u_plus, s.rh_speed, str(s.secant_iters)) for s in sol.shocks))
    write_report(cfg.out_dir / "report.txt", _solution_report(cfg, sol))
    return EXIT_OK


def cmd_slice(cfg: RunConfig) -> int:
    gamma0 = sample_gamma0(cfg.profile, cfg.n_points, cfg.jump_subpoints)
    curve = shear_polyline(cfg.flux, gamma0, float(cfg.params["solve.t"])).vertices
    write_csv(cfg.out_dir / "slice.csv", ["xi", "x", "y"], zip(curve.xi, curve.x, curve.y))
    return EXIT_OK


def cmd_godunov(cfg: RunConfig) -> int:
    grid = godunov_solve(cfg.flux, cfg.profile, float(cfg.params["solve.t"]),
                         int(cfg.params["godunov.cells"]), float(cfg.params["godunov.cfl"]))
    write_csv(cfg.out_dir / "godunov.csv", ["x_center", "u_avg"], zip(grid.centers, grid.averages))
    write_report(cfg.out_dir / "report.txt", {
        "t": grid.t, "n_cells": grid.n_cells, "dx": grid.dx, "steps": grid.steps,
        "mass": grid.mass})
    return EXIT_OK


def cmd_validate(cfg: RunConfig) -> int:
    t = float(cfg.params["solve.t"])
    sol = solve_at_time(cfg.flux, cfg.profile, t, **cfg.solve_kwargs)
    dt = cfg.params["validate.dt"]
    cells = int(cfg.params["validate.reference_cells"])
    reference = godunov_solve(cfg.flux, cfg.profile, t, cells) if cells > 0 else None
    report = validate(cfg.flux, cfg.profile, sol, None if dt is None else float(dt), reference)
    rh_tol = float(cfg.params["validate.rh_tol"])
    ok = report.passed(sol.area_tol, rh_tol)
    items: dict[str, Any] = {
        "t": t, "n_points": sol.n_points,
        "conservation_residual": report.conservation_residual,
        "conservation_tol": sol.area_tol,
        "sampling_error": sol.sampling_error,
        "entropy_ok": report.entropy_ok,
        "max_rh_residual": report.max_rh_residual,
        "rh_tol": rh_tol,
    }
    for k, (x, r) in enumerate(report.rh_residuals):
        items[f"rh.{k}.x"] = x
        items[f"rh.{k}.residual"] = r
    if report.l1_vs_reference is not None:
        items["l1_vs_godunov"] = report.l1_vs_reference
        items["godunov_cells"] = cells
    items["passed"] = ok
    sys.stdout.write(write_report(cfg.out_dir / "validation.txt", items))
    return EXIT_OK if ok else EXIT_NUMERICAL


def cmd_sweep(cfg: RunConfig) -> int:
    p = cfg.params
    result = sweep(cfg.flux, cfg.profile, float(p["sweep.t_start"]), float(p["sweep.t_end"]),
                   int(p["sweep.n_times"]), jobs=int(p["sweep.jobs"]), **cfg.solve_kwargs)
    for k, path in enumerate(result.paths):
        write_csv(cfg.out_dir / f"path_{k:03d}.csv", ["x", "t"], zip(path.x, path.t))
    write_csv(cfg.out_dir / "merges.csv", ["t_before", "t_after", "merged_path", "into_path"],
              ((m.t_before, m.t_after, str(m.merged), str(m.into)) for m in result.merge_events))
    write_report(cfg.out_dir / "report.txt", {
        "n_times": len(result.times), "paths": len(result.paths),
        "merges": len(result.merge_events),
        "shock_counts": ",".join(map(str, result.counts))})
    return EXIT_OK


def exact_shock_position(cfg: RunConfig, t: float) -> float | None:
    """Closed-form shock position for a single Burgers box, if applicable."""
    segs = cfg.profile.segments
    if cfg.flux.name != "burgers" or len(segs) != 1:
        return None
    seg = segs[0]
    height = float(seg(seg.a))
    if not hasattr(seg.func, "value") or height <= 0:
        return None
    if t > 2.0 * (seg.b - seg.a) / height:
        return None
    return seg.b + 0.5 * height * t


def cmd_convergence(cfg: RunConfig) -> int:
    t = float(cfg.params["solve.t"])
    n_list = cfg.params["convergence.n_list"]
    if isinstance(n_list, str):
        n_list = [int(s) for s in n_list.split(",") if s.strip()]
    n_list = sorted(int(n) for n in n_list)
    kwargs = dict(cfg.solve_kwargs)
    kwargs.pop("n_points")
    exact = exact_shock_position(cfg, t)
    if exact is not None:
        reference, ref_kind = [exact], "closed_form"
    else:
        ref = solve_at_time(cfg.flux, cfg.profile, t, 16 * n_list[-1], **kwargs)
        reference, ref_kind = [s.x for s in ref.shocks], f"n={16 * n_list[-1]}"
    rows, prev = [], None
    for n in n_list:
        sol = solve_at_time(cfg.flux, cfg.profile, t, n, **kwargs)
        xs = [s.x for s in sol.shocks]
        if len(xs) != len(reference):
            raise NumericalError(
                f"n={n} gives {len(xs)} shocks, reference has {len(reference)}")
        err = max((abs(a - b) for a, b in zip(xs, reference)), default=0.0)
        ratio = prev / err if prev is not None and err > 0 else float("nan")
        rows.append((str(n), xs[0] if xs else float("nan"), err, ratio))
        prev = err
    write_csv(cfg.out_dir / "convergence.csv", ["n", "shock_x", "error", "ratio"], rows)
    write_report(cfg.out_dir / "report.txt", {"t": t, "reference": ref_kind,
                                               "levels": len(rows)})
    return EXIT_OK

# }}}


COMMANDS = {
    "solve": cmd_solve, "slice": cmd_slice, "godunov": cmd_godunov,
    "validate": cmd_validate, "sweep": cmd_sweep, "convergence": cmd_convergence,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    args, extra = parser.parse_known_args(argv)
    try:
        cfg = _config_from_args(args, extra)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
    except ConfigurationError as exc:
        print(f"eqarea: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](cfg)
    except ConfigurationError as exc:
        print(f"eqarea: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EqualAreaError as exc:
        print(f"eqarea: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
