"""Building the trapping quadrilateral and watching it map into itself.

Uses the (1.1, 0.4, 0.4, 2) example with p_min = 2 and p_max = 4. Writes
``trapping_region.png`` if matplotlib is installed.
"""

# %%
import numpy as np

from bcnf import make_params, preimage_fan
from bcnf.trapping import (
    F_omega_polygon, build_trapping, check_conditions, evaluate_F,
    omega_contains, omega_polygon, sample_omega,
)

params = make_params(1.1, 0.4, 0.4, 2.0)
fan = preimage_fan(params, 4)
for i, line in enumerate(fan.lines, start=1):
    print(f"preimage line {i}: y = {line.m:+.4f} x {line.c:+.4f}")

# %%
# Corners S and T sit where lines p_max and p_min cross the y-axis. Each is
# followed around one return to find where it lands (F(S), F(T)) and how
# many right-branch steps it took.
region = build_trapping(params, fan, 2, 4)
print("S", region.S, "T", region.T)
print("F(S)", region.FS, "after q_S =", region.q_S)
print("F(T)", region.FT, "after q_T =", region.q_T)
print("violated conditions:", check_conditions(region) or "none")

# %%
# Forward invariance, checked by brute force on random points.
rng = np.random.default_rng(0)
pts = sample_omega(region, 5000, rng)
images = np.array([evaluate_F(params, tuple(z)).image for z in pts])
inside = np.mean([omega_contains(region, tuple(w), tol=1e-9) for w in images])
print(f"fraction of images back inside: {inside:.4f}")

# %%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 5))
    om = np.array(omega_polygon(region) + [region.S])
    fo = np.array(F_omega_polygon(region, params) + [region.U])
    ax.fill(om[:, 0], om[:, 1], color="0.85", label="region")
    ax.fill(fo[:, 0], fo[:, 1], color="0.55", label="image bound")
    ax.scatter(images[:, 0], images[:, 1], s=1, c="k")
    xs = np.linspace(om[:, 0].min() - 0.5, 0, 10)
    for line in fan.lines:
        ax.plot(xs, line.m * xs + line.c, lw=0.6, color="tab:blue")
    ax.axvline(0, color="k", lw=0.8)
    ax.set_ylim(om[:, 1].min() - 0.5, 0.5)
    ax.legend(loc="lower left")
    fig.savefig("trapping_region.png", dpi=120)
    print("wrote trapping_region.png")
