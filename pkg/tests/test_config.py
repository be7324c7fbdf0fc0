import pytest

from eqarea import ConfigurationError
from eqarea.config import DEFAULTS, build_run_config, load_config, parse_config_text


def test_parse_values():
    values = parse_config_text("""
# comment
flux.name = lwr_traffic
profile.params = {"u_left": 0.2, "u_right": 0.8}
profile.n_points = 500   # trailing comment
convergence.n_list = [100, 200]
""")
    assert values == {"flux.name": "lwr_traffic",
                      "profile.params": {"u_left": 0.2, "u_right": 0.8},
                      "profile.n_points": 500, "convergence.n_list": [100, 200]}
    assert values.origin["profile.n_points"] == "<config>:5"


@pytest.mark.parametrize("text, line", [
    ("flux.name = burgers\nnonsense\n", 2),
    ("\n\nnot.a.key = 1\n", 3),
])
def test_parse_errors_are_line_anchored(text, line):
    with pytest.raises(ConfigurationError, match=f"cfg.txt:{line}:"):
        parse_config_text(text, "cfg.txt")


@pytest.mark.parametrize("text, line, match", [
    ("profile.name = box\nprofile.n_points = 8\n", 2, "at least 16"),
    ("flux.name = nope\n", 1, "unknown flux"),
    ("profile.name = hat\nprofile.params = {\"width\": 2}\n", 2, ""),
    ("solver.root_tol = -1e-3\n", 1, "positive"),
    ("flux.expr = u^3\n", 1, "custom flux needs"),
])
def test_validation_errors_are_line_anchored(text, line, match):
    values = parse_config_text(text, "run.cfg")
    with pytest.raises(ConfigurationError, match=f"run.cfg:{line}: .*{match}"):
        build_run_config(values)


def test_defaults():
    cfg = build_run_config({}, "outdir")
    assert cfg.flux.name == "burgers"
    assert cfg.profile.name == "gaussian_triple"
    assert cfg.n_points == 1000 and cfg.jump_subpoints == 64
    assert cfg.params["solve.t"] == 4.25
    assert str(cfg.out_dir) == "outdir"
    assert set(cfg.solve_kwargs) == {"n_points", "jump_subpoints", "root_tol", "area_tol"}


def test_expression_flux_and_segments():
    cfg = build_run_config({
        "flux.expr": "u^2/2", "flux.deriv_expr": "u", "flux.second_deriv_expr": "1",
        "flux.convexity": "strictly_convex",
        "profile.segments": [{"a": -1, "b": 0, "expr": "1"}],
    })
    assert cfg.flux.deriv(0.5) == 0.5
    assert cfg.profile(-0.5) == 1.0


def test_load_config(tmp_path):
    path = tmp_path / "a.cfg"
    path.write_text("solve.t = 1.5\n")
    assert load_config(path) == {"solve.t": 1.5}
    with pytest.raises(ConfigurationError, match="cannot read"):
        load_config(tmp_path / "missing.cfg")


def test_defaults_cover_cli_keys():
    assert all("." in k for k in DEFAULTS)
