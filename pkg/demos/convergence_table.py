"""
Second-order convergence of shock positions
===========================================

With n sample points the polygon deviates from the smooth curve by
O(1/n^2), and so do the shock positions.  The reference is a run with
64000 points.
"""

import numpy as np

from eqarea import builtin_flux, gaussian_triple, riemann_step, solve_at_time

flux = builtin_flux("burgers")
h = gaussian_triple()
t = 4.25

ref = np.array([s.x for s in solve_at_time(flux, h, t, n_points=64000).shocks])

prev = None
print(f"{'n':>6} {'max error':>12} {'ratio':>7} {'epsilon':>11}")
for n in (250, 500, 1000, 2000, 4000):
    sol = solve_at_time(flux, h, t, n_points=n)
    err = np.max(np.abs(np.array([s.x for s in sol.shocks]) - ref))
    ratio = "" if prev is None else f"{prev / err:7.2f}"
    print(f"{n:6d} {err:12.3e} {ratio:>7} {sol.epsilon_estimate:11.3e}")
    prev = err

# a box is exact at every n: its sheared pieces are straight lines
box = solve_at_time(flux, riemann_step(), 1.0, n_points=250)
print("box shock at t=1:", box.shocks[0].x)
