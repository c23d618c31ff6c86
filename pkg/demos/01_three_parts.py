"""The three factors of the correlation, one at a time.

The correlation at scaled distance t is

    constant(nu) * t**nu * K_nu(t)

and each factor has its own personality: the Bessel factor decays
exponentially in t but explodes with the order, the power factor morphs from
logarithmic through linear to explosive as nu grows, and the constant factor
melts to zero once nu passes 5.  Run this script to regenerate the pictures
under demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from maternkit import bessel_k, constant_part, log_bessel_k, power_part

out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

# --- the Bessel factor: exponentially decreasing in its argument
d = np.linspace(0.5, 10.0, 100)
fig, axes = plt.subplots(1, 2, figsize=(11, 4))
axes[0].plot(d, bessel_k(1.5, d))
axes[0].set(xlabel="distance (rho = 1)", ylabel="K_1.5(d)", title="order 1.5: exponential decay")

# ... and dramatically increasing in the order: compare the y-scales
for nu in (1.5, 5.0, 10.0, 15.0):
    axes[1].semilogy(d, np.exp(log_bessel_k(nu, d)), label=f"nu = {nu}")
axes[1].legend()
axes[1].set(xlabel="distance", ylabel="K_nu(d), log scale", title="growth with the order")
fig.tight_layout()
fig.savefig(out / "bessel_factor.png", dpi=120)

# the order-15 curve tops out around 4e+19; double precision survives only
# because the library evaluates the factor in the log domain
print("K_15(0.5) =", np.exp(log_bessel_k(15.0, 0.5)))

# --- the power factor: rho only rescales, nu reshapes
d = np.arange(1, 1001) * 0.01
fig, axes = plt.subplots(1, 2, figsize=(11, 4))
for rho in (0.5, 10.5, 30.5, 50.0):
    axes[0].plot(d, power_part(0.5, d / rho), label=f"rho = {rho}")
axes[0].legend()
axes[0].set(title="nu = 0.5: rho only scales the magnitude", xlabel="distance")
for nu in (0.5, 1.0, 1.5, 2.0, 3.0):
    axes[1].plot(d, power_part(nu, d / 10.0), label=f"nu = {nu}")
axes[1].plot(d, 0.1 * d, "k:", label="0.1 d reference line")
axes[1].set_ylim(0, 1.2)
axes[1].legend()
axes[1].set(title="rho = 10: nu reshapes the curve", xlabel="distance")
fig.tight_layout()
fig.savefig(out / "power_factor.png", dpi=120)

# near nu = 1 the power curve hugs the straight line; the mean squared gap
# stays around 0.01 for nu in [0.7, 1.5] and grows quickly outside
from maternkit import power_curve_mse  # noqa: E402

for nu in (0.3, 0.7, 1.0, 1.5, 2.0):
    print(f"mse(nu={nu}) = {power_curve_mse(nu):.5f}")

# --- the constant factor: essentially gone past nu = 5
nus = np.arange(1, 1001) * 0.01
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(nus, constant_part(nus))
ax.axhline(1.0, color="grey", lw=0.5)
ax.set(xlabel="nu", ylabel="2^(1-nu)/Gamma(nu)", title="the constant factor")
fig.savefig(out / "constant_factor.png", dpi=120)

# a subtlety the plot cannot show: the factor peaks at ~1.00396 near
# nu = 0.933, so "always between 0 and 1" is off by a sliver
peak = nus[np.argmax(constant_part(nus))]
print(f"constant factor peaks at nu = {peak:.2f} with value {constant_part(peak):.5f}")
