import pickle

import numpy as np
import pytest

from eqarea import Shock, builtin_flux, hat, riemann_step
from eqarea.shock_path import link_shocks, sweep


def _shock(x):
    return Shock(x, 1.0, 0.0, 0.5, 0.0, 0)


def test_no_shocks_before_breaking(burgers, unit_hat):
    # the hat's characteristics first cross at t = 1
    result = sweep(burgers, unit_hat, 0.0, 0.95, 10, n_points=300)
    assert result.paths == [] and result.merge_events == []
    assert result.counts == [0] * 10


def test_riemann_path(burgers, step):
    result = sweep(burgers, step, 0.1, 1.9, 50, n_points=1000)
    assert len(result.paths) == 1
    path = result.paths[0]
    assert len(path) == 50
    assert np.max(np.abs(np.asarray(path.x) - np.asarray(path.t) / 2)) <= 5e-3
    assert path.points.shape == (50, 2)
    assert np.all(np.diff(path.t) > 0)


def test_gaussian_topology(burgers, gaussians):
    result = sweep(burgers, gaussians, 0.0, 10.0, 50, jobs=2)
    counts = result.counts
    peak = int(np.argmax(counts))
    assert max(counts) == 3 and len(result.paths) == 3
    assert all(b <= a for a, b in zip(counts[peak:], counts[peak + 1:]))
    assert len(result.merge_events) >= 1
    for m in result.merge_events:
        assert m.t_before < m.t_after and m.merged != m.into
    for p in result.paths:
        assert np.all(np.diff(p.t) > 0)


def test_path_slopes_match_rh(burgers, gaussians):
    n_points, n_times = 1000, 50
    result = sweep(burgers, gaussians, 0.0, 10.0, n_times, n_points=n_points)
    dt = result.times[1] - result.times[0]
    merge_times = {m.t_before for m in result.merge_events} | {m.t_after for m in result.merge_events}
    checked = 0
    for p in result.paths:
        for k in range(1, len(p) - 1):
            window = (p.t[k - 1], p.t[k], p.t[k + 1])
            if merge_times & set(window):
                continue
            slope = (p.x[k + 1] - p.x[k - 1]) / (p.t[k + 1] - p.t[k - 1])
            assert abs(slope - p.shocks[k].rh_speed) <= 10 * (dt + 1 / n_points)
            checked += 1
    assert checked > 20


def test_parallel_matches_serial(burgers, gaussians):
    a = sweep(burgers, gaussians, 2.0, 8.0, 12, n_points=400, jobs=1)
    b = sweep(burgers, gaussians, 2.0, 8.0, 12, n_points=400, jobs=3)
    assert [p.x for p in a.paths] == [p.x for p in b.paths]
    assert a.merge_events == b.merge_events


def test_picklable_inputs(burgers, gaussians):
    for obj in (burgers, gaussians, hat(), riemann_step(), builtin_flux("lwr_traffic")):
        pickle.loads(pickle.dumps(obj))


def test_link_merge_and_birth():
    times = [0.0, 1.0, 2.0, 3.0]
    slices = [[], [_shock(0.0)], [_shock(0.1), _shock(2.0)], [_shock(1.9)]]
    paths, merges = link_shocks(times, slices, radius=2.0)
    assert [p.t for p in paths] == [[1.0, 2.0], [2.0, 3.0]]
    assert len(merges) == 1
    m = merges[0]
    assert (m.t_before, m.t_after, m.merged, m.into) == (2.0, 3.0, 0, 1)


def test_link_disappearance_is_not_merge():
    paths, merges = link_shocks([0.0, 1.0], [[_shock(0.0)], [_shock(5.0)]], radius=1.0)
    assert len(paths) == 2 and merges == []


def test_sweep_arguments(burgers, step):
    with pytest.raises(ValueError):
        sweep(burgers, step, 1.0, 1.0, 5)
    with pytest.raises(ValueError):
        sweep(burgers, step, 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        sweep(burgers, step, -1.0, 1.0, 5)


def test_failed_solve_names_time(burgers, gaussians):
    from eqarea import NonTerminationError
    from eqarea import solver
    original = solver.EXTRA_CUTS
    solver.EXTRA_CUTS = -10
    try:
        with pytest.raises(NonTerminationError, match="t="):
            sweep(burgers, gaussians, 4.0, 5.0, 2, n_points=300)
    finally:
        solver.EXTRA_CUTS = original
