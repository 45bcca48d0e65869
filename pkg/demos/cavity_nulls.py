"""Between two plates: null lines and the reflection map."""
import numpy as np

from entangled_rates import AtomConfig, channel, rate_cavity, s_function

L = 7.0
sg = channel("s", "g", 2.0)
ag = channel("a", "g", 2.0)

# --- The lattice function behind every cavity rate
# S(0) = 5/14 here; it is even in z with period L
for z in (0.0, 1.0, 3.5, 7.0, 13.0):
    print(f"S({z}) = {s_function(z, -2.0, L):+.6f}")

# --- |s> cannot decay when the atoms sit mirror-symmetrically, |a> when they coincide
for d in (0.5, 2.0, 3.1):
    print(
        f"d = {d}:  R_sg(d, L-d) = {rate_cavity(sg, AtomConfig(d, L - d), L).total:.1e}"
        f"   R_ag(d, d) = {rate_cavity(ag, AtomConfig(d, d), L).total:.1e}"
    )

# --- Reflecting one atom swaps the two channels
d1, d2 = 1.3, 2.2
print(rate_cavity(sg, AtomConfig(d1, d2), L).total, rate_cavity(ag, AtomConfig(d1, L - d2), L).total)

# one atom on a plate: the pair still decays through the other one
print("R_sg(0, 2.3) =", rate_cavity(sg, AtomConfig(0.0, 2.3), L).total)

# a narrow cavity has no open mode below the gap and nothing decays
print("L = 1.0:", rate_cavity(sg, AtomConfig(0.2, 0.3), 1.0).total)

# widths where a mode sits on the gap are flagged
print("resonant:", rate_cavity(sg, AtomConfig(1.0, 2.0), 3 * np.pi / 2).resonant)
