"""
Characteristic slices of the Gaussian bumps
===========================================

Under Burgers' flux every point (xi, h(xi)) of the initial graph travels
with speed u, so the graph at time t is the initial graph sheared by
x -> x + u t.  Once the shear folds the curve it stops being a graph.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from eqarea import builtin_flux, count_x_extrema, gaussian_triple, sample_gamma0, shear_polyline

out = os.environ.get("EQAREA_OUT_DIR", ".")
flux = builtin_flux("burgers")
h = gaussian_triple()
gamma0 = sample_gamma0(h, 1000)

fig, ax = plt.subplots(figsize=(8, 4))
for t in (0.0, 1.5, 3.0, 4.25):
    curve = shear_polyline(flux, gamma0, t).vertices
    # each fold contributes one maximum and one minimum of x
    folds = count_x_extrema(curve) // 2
    ax.plot(curve.x, curve.y, label=f"t = {t:g} ({folds} folds)")

ax.set_xlabel("x")
ax.set_ylabel("u")
ax.legend()
fig.savefig(os.path.join(out, "characteristic_slices.png"), dpi=120)
print("folds at t=4.25:", count_x_extrema(shear_polyline(flux, gamma0, 4.25)) // 2)
