"""Gaussian-process paths drawn under different orders, plus the spectrum.

The order controls how rough the sample paths look: order 1/2 paths are
jagged, order 5/2 paths are visibly differentiable.  The spectral densities
tell the same story from the frequency side: larger orders put less mass on
high frequencies.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from maternkit import (
    MaternParams,
    Parametrization,
    PointSet,
    cholesky_with_jitter,
    correlation_matrix,
    sample_gaussian_process,
    spectral_density,
)

out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

pts = PointSet(np.linspace(0.0, 5.0, 400))
fig, axes = plt.subplots(1, 2, figsize=(12, 4))
for nu in (0.5, 1.5, 2.5):
    params = MaternParams(nu=nu, scale=1.0)
    factor = cholesky_with_jitter(correlation_matrix(params, pts))
    path = sample_gaussian_process(factor, seed=42, n_draws=1)[0]
    axes[0].plot(pts.coords[:, 0], path, label=f"nu = {nu}", lw=1)
    print(f"nu={nu}: jitter used {factor.jitter:g}")
axes[0].legend()
axes[0].set(xlabel="location", title="one path per order, same seed")

w = np.linspace(0.0, 8.0, 300)
for nu in (0.5, 1.5, 2.5):
    params = MaternParams(nu=nu, scale=1.0, parametrization=Parametrization.DECAY, dim=1)
    axes[1].semilogy(w, spectral_density(params, w), label=f"nu = {nu}")
axes[1].legend()
axes[1].set(xlabel="frequency", title="spectral densities (unit variance)")
fig.tight_layout()
fig.savefig(out / "paths_and_spectra.png", dpi=120)
print("wrote", out / "paths_and_spectra.png")
