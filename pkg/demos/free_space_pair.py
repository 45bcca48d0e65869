"""Two atoms in empty space: superradiant and subradiant decay."""
import numpy as np

from entangled_rates import AtomConfig, channel, rate_free

omega0 = 2.0
lam = 2 * np.pi / omega0
sg = channel("s", "g", omega0)
ag = channel("a", "g", omega0)

# --- Coincident atoms
# |s> decays twice as fast as an isolated atom, |a> does not decay at all
single = omega0 / (2 * np.pi)
print("R_sg(0) / single atom:", rate_free(sg, AtomConfig(0, 0)).total / single)
print("R_ag(0):", rate_free(ag, AtomConfig(0, 0)).total)

# --- Separation scan, in wavelengths
d = np.linspace(0.01, 3, 300) * lam
r_sg = rate_free(sg, AtomConfig(0, d)).total
r_ag = rate_free(ag, AtomConfig(0, d)).total
for x in (0.25, 0.5, 0.75, 1.0, 2.0):
    i = np.argmin(abs(d - x * lam))
    print(f"d = {x:4.2f} lambda   R_sg = {r_sg[i]:.4f}   R_ag = {r_ag[i]:.4f}")

# both curves settle on the single-atom value once the atoms are far apart
print("far apart:", rate_free(sg, AtomConfig(0, 1e4 * lam)).total, single)
