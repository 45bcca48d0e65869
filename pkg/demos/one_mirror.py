"""A Dirichlet plane next to the pair."""
import numpy as np

from entangled_rates import AtomConfig, channel, rate_mirror
from entangled_rates.kernels import response_mirror

sg = channel("s", "g", 2.0)
ag = channel("a", "g", 2.0)

# --- Atoms side by side at the same distance from the mirror
for d in (0.1, 0.5, 1.0, 5.0):
    cfg = AtomConfig(d, d)
    print(f"d1 = d2 = {d:<4}  R_sg = {rate_mirror(sg, cfg).total:.5f}  R_ag = {rate_mirror(ag, cfg).total:.1e}")

# the antisymmetric state is frozen at every distance: self and cross terms cancel
bd = rate_mirror(ag, AtomConfig(0.7, 0.7))
print(bd)

# --- Break the symmetry and |a> can decay again
print("R_ag(0.7, 1.9) =", rate_mirror(ag, AtomConfig(0.7, 1.9)).total)

# an atom sitting on the plane does not couple to the field
print("self term on the plane:", response_mirror(-2.0, 0.0, 1.0, "self1"))

# a 2D map, vectorised
g = np.linspace(0.2, 3.0, 5)
d1, d2 = np.meshgrid(g, g, indexing="ij")
print(np.round(rate_mirror(sg, AtomConfig(d1, d2)).total, 3))
