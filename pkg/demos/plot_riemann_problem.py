"""
Shock and rarefaction for a box under Burgers' flux
===================================================

h = 1 on [-1, 0] and 0 elsewhere.  The right edge becomes a shock moving
at speed 1/2, the left edge opens a fan u = (x + 1) / t.  Both are exact
in the polygonal representation because the sheared pieces are straight.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eqarea import builtin_flux, riemann_step, solve_at_time

out = os.environ.get("EQAREA_OUT_DIR", ".")
flux = builtin_flux("burgers")
h = riemann_step()

x = np.linspace(-1.5, 1.5, 1201)
fig, ax = plt.subplots(figsize=(7, 3.5))
for t in (0.5, 1.0, 1.5):
    sol = solve_at_time(flux, h, t, n_points=1000)
    ax.plot(x, sol(x), label=f"t = {t:g}")
    s = sol.shocks[0]
    print(f"t={t:g}: shock at x={s.x:.6f} (expected {t / 2:.6f}), "
          f"u-={s.u_minus:g}, u+={s.u_plus:g}, RH speed {s.rh_speed:g}")

ax.set_xlabel("x")
ax.set_ylabel("u")
ax.legend()
fig.savefig(os.path.join(out, "riemann_problem.png"), dpi=120)
