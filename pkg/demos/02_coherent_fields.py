"""
Population dynamics with coherent fields
========================================

Each dressed block oscillates at its own frequency.  With coherent fields
the Poisson spread of photon numbers makes the oscillations dephase and
partly come back.  Here we look at a ladder atom starting in |e>.
"""

import numpy as np

from qutritdyn import CoherentPrep, SystemParams, evolve_ensemble

params = SystemParams(g_a=1.0, g_b=1.0)

# Mean photon number 4 in both modes; the default cutoff of 24 keeps
# all but 1e-10 of the Poisson weight.  Asking for more photons than the
# cutoff supports raises TruncationError with the cutoff you need.
prep = CoherentPrep(mean_a=4.0, mean_b=4.0, atom=(1, 0, 0))
times = np.linspace(0, 40, 801)
traj = evolve_ensemble("L", params, prep, times)

print(f"{traj.meta['blocks']} blocks contribute")
print("   t     P_e     P_i     P_g")
for k in range(0, len(times), 40):
    print(f"{times[k]:5.1f}  {traj.p_e[k]:.4f}  {traj.p_i[k]:.4f}  {traj.p_g[k]:.4f}")

# Probability is conserved to rounding at every sample.
print("max |P_e + P_i + P_g - 1| =", np.max(np.abs(traj.total() - 1)))

# A ladder atom in |g> with mode a empty has nothing to absorb: it stays put.
dark = evolve_ensemble("L", params, CoherentPrep(mean_b=4.0, atom=(0, 0, 1)), times)
print("ground-state trajectory, max |P_g - 1| =", np.max(np.abs(dark.p_g - 1)))
