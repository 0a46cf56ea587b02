"""Angle maps of the return matrices and the invariant expanding cone.

Each return with p left and q right steps acts on directions through the
angle map G and stretches them by H. If the stable fixed directions of all
the G's cluster in an arc J that avoids the unstable ones, J is invariant;
if also H > 1 on J, tangent vectors in J grow at every return.
"""

# %%
import numpy as np

from bcnf import make_params
from bcnf.cone import (
    GammaSet, angle_map, expansion_check, fixed_points, gamma_matrices,
    invariance_check, max_contracting_margin, min_norm_on_arc, unit_crossings,
    unmixed_interval,
)

params = make_params(1.0, 0.2, -1.2, 2.0)
gamma = GammaSet(1, 3, 1, 2)
mats = gamma_matrices(params, gamma)

# %%
pairs = []
for (p, q), m in mats.items():
    fp = fixed_points(m, p, q)
    cr = unit_crossings(m)
    pairs.append(fp)
    print(f"(p, q) = ({p}, {q}): stable {fp.stable:.4f}, unstable {fp.unstable:.4f}, "
          f"eta {fp.eta:+.4f}, H < 1 on ({cr.dec:.4f}, {cr.inc:.4f})")

# %%
J = unmixed_interval(pairs)
print(f"J = [{J.lo:.4f}, {J.hi:.4f}]")
print("invariant:", invariance_check(params, gamma, J))
print(f"widest margin that still maps strictly inward: {max_contracting_margin(params, gamma, J):.4f}")
c = expansion_check(params, gamma, J)
print(f"expansion factor on J: {c:.4f}")

# %%
# The factor is the smallest stretch over the family; which matrix sets it?
worst = min(mats, key=lambda pq: min_norm_on_arc(mats[pq], J))
print("tightest pair:", worst)

# %%
# Iterating one of the angle maps from the middle of J stays in J and
# converges to that map's stable direction.
theta = J.lo + 0.5 * J.length
m = mats[(1, 1)]
for _ in range(5):
    theta = angle_map(m, theta)
    print(f"{theta:.6f}", J.contains(theta, 1e-12))
