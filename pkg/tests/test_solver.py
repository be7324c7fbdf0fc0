import math

import numpy as np
import pytest

from eqarea import (MalformedFoldError, NumericalError, Polyline, area_balance,
                    area_under_graph, box, equal_area_cut,
                    find_significant_points, gaussian_triple, hat, riemann_step,
                    sample_gamma0, shear_polyline, shock_displacement_estimate,
                    solve_at_time)
from eqarea.solver import polygonal_error_bound, resolve_folds

# hat of half-width 1 and height 1 sheared by Burgers at t = 2:
# rising edge (-1, 0) -> (2, 1), falling edge (2, 1) -> (1, 0)
SHEARED_HAT = [(-2.0, 0.0), (-1.0, 0.0), (2.0, 1.0), (1.0, 0.0), (3.0, 0.0)]
HAT_SHOCK = -1.0 + math.sqrt(6.0)

# double fold with y decreasing along the curve; the second fold is too
# small to balance the first at gamma, so the first cut is of the second kind
DOUBLE_FOLD = [(-1, 3), (3, 2.5), (0, 2), (1, 1.5), (0.5, 1), (5, 0)]
DOUBLE_FOLD_DELTA = 3.0 - 4.0 / math.sqrt(7.0)
DOUBLE_FOLD_AREA = 7.625


def _double_fold_final_shock():
    # the single shock of the resolved curve conserves the area of the fold
    x = np.polynomial.Polynomial([0.0, 1.0])
    a = 3 * (x + 1) - (x + 1) ** 2 / 16 + (5 - x) - (20.25 - (x - 0.5) ** 2) / 9
    roots = (a - DOUBLE_FOLD_AREA).roots()
    return float(roots[(roots > 1) & (roots < 3)][0].real)


def test_significant_points_hat():
    sig = find_significant_points(Polyline.from_points(SHEARED_HAT))
    assert (sig.tau1, sig.tau2, sig.tau3) == (2, 3, None)
    assert (sig.beta, sig.alpha, sig.gamma) == (2.0, 1.0, 2.0)


def test_significant_points_graph_is_none(gaussians):
    assert find_significant_points(sample_gamma0(gaussians, 100)) is None


def test_area_balance_closed_form():
    curve = Polyline.from_points(SHEARED_HAT)
    sig = find_significant_points(curve)
    for x in np.linspace(1.01, 1.99, 17):
        expected = (x - 1) ** 2 / 2 - (2 - x) ** 2 / 3
        assert area_balance(curve, sig, x) == pytest.approx(expected, abs=1e-14)


def test_hat_cut():
    curve = Polyline.from_points(SHEARED_HAT)
    new, shock = equal_area_cut(curve, find_significant_points(curve))
    assert shock.x == pytest.approx(HAT_SHOCK, abs=1e-14)
    assert shock.u_minus == pytest.approx((HAT_SHOCK + 1) / 3, abs=1e-14)
    assert shock.u_plus == 0.0
    assert shock.case == 1
    assert shock.secant_iters <= 15
    assert find_significant_points(new) is None
    assert abs(area_under_graph(new) - area_under_graph(curve)) < 1e-14


def test_symmetric_s_fold():
    curve = Polyline.from_points([(-3, -1), (1, -0.2), (-1, 0.2), (3, 1)])
    new, shock = equal_area_cut(curve, find_significant_points(curve))
    assert shock.x == pytest.approx(0.0, abs=1e-14)
    assert shock.u_minus == pytest.approx(-0.4, abs=1e-14)
    assert shock.u_plus == pytest.approx(0.4, abs=1e-14)
    assert abs(area_under_graph(new) - area_under_graph(curve)) < 1e-14


def test_double_fold_second_kind():
    curve = Polyline.from_points(DOUBLE_FOLD)
    sig = find_significant_points(curve)
    assert (sig.beta, sig.alpha, sig.gamma) == (3.0, 0.0, 1.0)
    assert area_balance(curve, sig, sig.gamma) == pytest.approx(-0.25, abs=1e-14)
    new, shock = equal_area_cut(curve, sig)
    assert shock.case == 2
    assert shock.x == pytest.approx(DOUBLE_FOLD_DELTA, abs=1e-14)
    assert shock.balanced_area == pytest.approx(1 / 3, abs=1e-14)
    assert area_under_graph(new) == pytest.approx(DOUBLE_FOLD_AREA, abs=1e-14)
    # the fold is still present and resolved on the next pass
    assert find_significant_points(new) is not None


def test_double_fold_resolves_to_one_shock():
    curve = Polyline.from_points(DOUBLE_FOLD)
    final, cuts = resolve_folds(curve)
    assert [c.case for c in cuts] == [2, 1]
    assert find_significant_points(final) is None
    assert area_under_graph(final) == pytest.approx(DOUBLE_FOLD_AREA, abs=1e-13)
    vertical = np.flatnonzero(np.diff(final.x) == 0)
    assert vertical.size == 1
    assert final.x[vertical[0]] == pytest.approx(_double_fold_final_shock(), abs=1e-12)


def test_malformed_fold():
    # a maximum of x with no minimum after it cannot be an S-curve
    curve = Polyline.from_points([(0, 0), (2, 1), (1, 2)])
    with pytest.raises(MalformedFoldError):
        find_significant_points(curve)


def test_riemann_shock_burgers(burgers):
    for n in (250, 1000, 4000):
        sol = solve_at_time(burgers, riemann_step(), 1.0, n_points=n)
        assert len(sol.shocks) == 1
        s = sol.shocks[0]
        assert s.x == pytest.approx(0.5, abs=1e-14)
        assert (s.u_minus, s.u_plus) == (1.0, 0.0)
        assert s.rh_speed == 0.5


def test_rarefaction_fan(burgers):
    # u = 0 | 1 at x = 0 opens a fan u = x / t
    step = riemann_step(u_left=0.0, u_right=1.0, left=-1.0, middle=0.0, right=2.0)
    sol = solve_at_time(burgers, step, 0.5, n_points=600)
    x = np.linspace(0.01, 0.49, 25)
    np.testing.assert_allclose(sol(x), x / 0.5, atol=1e-12)
    # the right edge compresses into a shock at 2 + t/2
    assert len(sol.shocks) == 1
    assert sol.shocks[0].x == pytest.approx(2.25, abs=1e-13)


def test_hat_solution(burgers, unit_hat):
    sol = solve_at_time(burgers, unit_hat, 2.0, n_points=1000)
    assert len(sol.shocks) == 1
    s = sol.shocks[0]
    assert s.x == pytest.approx(HAT_SHOCK, abs=1e-12)
    assert s.u_minus == pytest.approx((HAT_SHOCK + 1) / 3, abs=1e-12)
    assert sol.area_drift < 1e-13
    assert sol.conserved


def test_evaluate(burgers, unit_hat):
    sol = solve_at_time(burgers, unit_hat, 2.0)
    assert sol(-10.0) == 0.0 and sol(10.0) == 0.0
    assert sol(0.5) == pytest.approx(1.5 / 3, abs=1e-12)
    # right limit at the shock
    assert sol(sol.shocks[0].x) == 0.0
    assert sol(sol.shocks[0].x - 1e-9) == pytest.approx(sol.shocks[0].u_minus, abs=1e-8)
    np.testing.assert_array_equal(sol(np.array([-10.0, 10.0])), [0.0, 0.0])


def test_time_zero_is_initial_data(burgers, gaussians):
    sol = solve_at_time(burgers, gaussians, 0.0, n_points=500)
    assert sol.shocks == [] and sol.cuts_performed == 0
    x = np.linspace(-9.9, 9.9, 41)
    np.testing.assert_allclose(sol(x), gaussians(x), atol=2e-3)


def test_direct_in_time(burgers, gaussians):
    # no time stepping: a late solve costs about as much as an early one
    import time
    t0 = time.perf_counter()
    solve_at_time(burgers, gaussians, 1.0)
    early = time.perf_counter() - t0
    t0 = time.perf_counter()
    late = solve_at_time(burgers, gaussians, 10.0)
    assert time.perf_counter() - t0 < max(20 * early, 0.5)
    assert late.t == 10.0


def test_cut_count_bounded_by_extrema(burgers, gaussians):
    from eqarea import count_x_extrema
    for t in (2.0, 4.25, 7.0, 10.0):
        sheared = shear_polyline(burgers, sample_gamma0(gaussians), t)
        sol = solve_at_time(burgers, gaussians, t)
        assert sol.cuts_performed <= count_x_extrema(sheared)


def test_lwr_entropy(lwr):
    # traffic flux is concave: admissible shocks have u_minus < u_plus
    step = riemann_step(u_left=0.2, u_right=0.8, left=-1.0, middle=0.0, right=1.0)
    sol = solve_at_time(lwr, step, 0.5, n_points=800)
    assert len(sol.shocks) == 2
    for s in sol.shocks:
        assert s.u_minus < s.u_plus
    left, middle = sorted(sol.shocks, key=lambda s: s.x)
    assert left.x == pytest.approx(-1 + 0.5 * 0.8, abs=1e-12)
    assert middle.x == pytest.approx(0.0, abs=1e-12)


def test_gaussian_quadratic_convergence(burgers, gaussians):
    ref = solve_at_time(burgers, gaussians, 4.25, n_points=64000)
    errors = []
    for n in (1000, 2000):
        sol = solve_at_time(burgers, gaussians, 4.25, n_points=n)
        assert len(sol.shocks) == len(ref.shocks)
        errors.append(max(abs(a.x - b.x) for a, b in zip(sol.shocks, ref.shocks)))
    assert 3.0 <= errors[0] / errors[1] <= 5.0


def test_error_bound_halves_twice(burgers, gaussians):
    eps = [polygonal_error_bound(shear_polyline(burgers, sample_gamma0(gaussians, n),
                                                4.25).vertices) for n in (1000, 2000)]
    assert 3.0 <= eps[0] / eps[1] <= 5.0


def test_polygonal_error_bound_straight_lines():
    x = np.linspace(-1.0, 2.0, 50)
    assert polygonal_error_bound(Polyline(x, 0.25 * x + 1.0)) < 1e-15
    # kinks between separately labelled pieces carry no curvature
    hat_curve = Polyline.from_points(SHEARED_HAT)
    hat_curve = Polyline(hat_curve.x, hat_curve.y, piece=np.array([0, 0, 1, 2, 2]))
    assert polygonal_error_bound(hat_curve) == 0.0


def test_displacement_estimate():
    assert shock_displacement_estimate(1e-4, 2.0, 0.5) == pytest.approx(4e-4)
    with pytest.raises(NumericalError):
        shock_displacement_estimate(1e-4, 2.0, 1e-13)


def test_validation_of_inputs(burgers, unit_hat):
    with pytest.raises(ValueError):
        solve_at_time(burgers, unit_hat, -1.0)
    curve = Polyline.from_points(SHEARED_HAT)
    with pytest.raises(ValueError):
        equal_area_cut(curve, find_significant_points(curve), root_tol=0.0)


def test_box_mass_conserved_for_all_times(burgers):
    for t in (0.5, 1.0, 3.0, 8.0):
        sol = solve_at_time(burgers, box(), t, n_points=400)
        assert abs(area_under_graph(sol.curve) - 1.0) < 1e-13
        if t > 0:
            # after t = 2 the fan catches the shock: x_s = sqrt(2 t) - 1
            expected = t / 2 if t <= 2 else math.sqrt(2 * t) - 1
            assert sol.shocks[-1].x == pytest.approx(expected, abs=2e-3)


def test_gaussian_triple_solve(burgers):
    sol = solve_at_time(burgers, gaussian_triple(), 4.25)
    assert sol.cuts_performed == 3 and len(sol.shocks) == 3
    assert sol.epsilon_estimate < 6e-4
    assert sol.conserved
    assert all(s.u_minus > s.u_plus for s in sol.shocks)


def test_hat_builtin_params():
    h = hat(center=1.0, half_width=2.0, height=3.0)
    assert h(1.0) == 3.0 and h(-1.0) == 0.0 and h(2.0) == 1.5


def test_drift_of_curved_data_is_sampling_error(burgers):
    from eqarea import expression_profile
    prof = expression_profile([{"a": -1, "b": 0, "expr": "1 - x^2"}])
    for n in (500, 1000):
        sol = solve_at_time(burgers, prof, 4.25, n_points=n)
        # trapezoid error of the sampled graph, conserved exactly afterwards
        assert abs(sol.sampling_error) > 1e-8
        assert abs(sol.area_drift - abs(sol.sampling_error)) < 1e-13
    # and it shrinks at second order
    coarse = solve_at_time(burgers, prof, 1.0, n_points=500).sampling_error
    fine = solve_at_time(burgers, prof, 1.0, n_points=1000).sampling_error
    assert 3.5 < coarse / fine < 4.5
