"""Where the certificate applies on a (tau_L, tau_R) slice.

Runs a coarse grid with simulation on, then prints a character map:
``#`` certified chaotic, ``+`` positive simulated exponent but no
certificate, ``o`` periodic, ``.`` anything else. Certified cells should
only ever appear where the simulation also finds a positive exponent.
"""

# %%
import numpy as np

from bcnf.sweep import GridSpec, run_sweep

grid = GridSpec(tau_L=(0.8, 2.0, 25), tau_R=(-2.0, 1.0, 50), delta_L=0.2, delta_R=2.0)
rows = run_sweep(grid, threads=1, with_sim=True)

# %%
n_l, n_r = grid.tau_L[2], grid.tau_R[2]
verdict = np.array([r[2] for r in rows]).reshape(n_l, n_r)
kind = np.array([r[10] for r in rows]).reshape(n_l, n_r)

symbol = np.full(verdict.shape, ".")
symbol[kind == "PERIODIC"] = "o"
symbol[kind == "POS_LE"] = "+"
symbol[verdict == "chaos"] = "#"

# tau_L increases upward, tau_R to the right
tau_L = np.linspace(*grid.tau_L)
for i in range(n_l - 1, -1, -1):
    print(f"{tau_L[i]:5.2f} " + "".join(symbol[i]))

# %%
chaos = verdict == "chaos"
print(f"certified {chaos.sum()} of {chaos.size}; "
      f"all inside positive-exponent cells: {bool(np.all(kind[chaos] == 'POS_LE'))}")
print(f"positive exponent but not certified: {int(((kind == 'POS_LE') & ~chaos).sum())}")
