"""
Shock paths in the (x, t)-plane
===============================

Every time slice is solved independently, then shocks of neighbouring
slices are linked by position.  For the Gaussian bumps three shocks form
and two of them merge.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from eqarea import builtin_flux, gaussian_triple
from eqarea.shock_path import sweep

out = os.environ.get("EQAREA_OUT_DIR", ".")

if __name__ == "__main__":
    # the guard is needed because the sweep uses a process pool
    result = sweep(builtin_flux("burgers"), gaussian_triple(), 0.0, 10.0, 100, jobs=4)

    print("shock counts:", result.counts)
    for m in result.merge_events:
        print(f"path {m.merged} merges into path {m.into} between t={m.t_before:.3f} and {m.t_after:.3f}")

    fig, ax = plt.subplots(figsize=(5, 5))
    for k, path in enumerate(result.paths):
        ax.plot(path.x, path.t, label=f"path {k}")
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.legend()
    fig.savefig(os.path.join(out, "shock_paths.png"), dpi=120)
