"""Correlation surfaces over 2-D displacement, across orders and ranges.

Reading the panel grid row by row: growing the range parameter widens the
footprint of the surface (large-scale smoothing).  Column by column: growing
the order lifts and polishes the surface inside whatever footprint the range
allows (small-scale smoothing).  The printed color-key ranges shrink
dramatically as the order grows at a large range.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from maternkit import MaternParams, surface_grid

out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

nus = (0.1, 1.0, 2.5)
rhos = (0.1, 0.5, 5.0, 75.0)

fig, axes = plt.subplots(len(nus), len(rhos), figsize=(14, 9), subplot_kw={"projection": "3d"})
for i, nu in enumerate(nus):
    for j, rho in enumerate(rhos):
        surf = surface_grid(MaternParams(nu=nu, scale=rho), half_width=5.0, resolution=61)
        x, y = np.meshgrid(surf.x_grid, surf.y_grid)
        ax = axes[i, j]
        ax.plot_surface(x, y, surf.z, cmap="viridis", linewidth=0)
        ax.set_title(f"nu={nu}, rho={rho}", fontsize=9)
        ax.set_zlim(0, 1)
        print(
            f"nu={nu:4}, rho={rho:5}: surface range "
            f"[{surf.z.min():.4f}, {surf.z.max():.4f}]"
        )
fig.tight_layout()
fig.savefig(out / "correlation_surfaces.png", dpi=110)
print("wrote", out / "correlation_surfaces.png")
