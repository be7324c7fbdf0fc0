"""
Equal-area cuts on the Gaussian bumps at t = 4.25
=================================================

The folded characteristic curve is cut by vertical segments chosen so that
the two lobes on either side of each cut have equal area.  The result is a
graph again, and the area under it equals the initial mass.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from eqarea import builtin_flux, gaussian_triple, sample_gamma0, shear_polyline, solve_at_time

out = os.environ.get("EQAREA_OUT_DIR", ".")
flux = builtin_flux("burgers")
h = gaussian_triple()
t = 4.25

folded = shear_polyline(flux, sample_gamma0(h, 1000), t).vertices
sol = solve_at_time(flux, h, t, n_points=1000)

print(f"cuts performed:   {sol.cuts_performed}")
print(f"epsilon estimate: {sol.epsilon_estimate:.3e}")
print(f"area drift:       {sol.area_drift:.3e}")
for s, dx in zip(sol.shocks, sol.displacement_estimates()):
    print(f"shock x={s.x:8.5f}  u-={s.u_minus:.4f} u+={s.u_plus:.4f}"
          f"  secant iterations {s.secant_iters}  displacement ~{dx:.1e}")

fig, ax = plt.subplots(figsize=(8, 4))
ax.plot(folded.x, folded.y, color="0.7", label="sheared initial graph")
ax.plot(sol.curve.x, sol.curve.y, color="C3", label="equal-area solution")
ax.set_xlim(-12, 16)
ax.set_xlabel("x")
ax.set_ylabel("u")
ax.legend()
fig.savefig(os.path.join(out, "equal_area_gaussians.png"), dpi=120)
