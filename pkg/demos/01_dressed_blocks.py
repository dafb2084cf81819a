"""
Dressed blocks of a three-level atom in two modes
=================================================

The resonant coupling never mixes more than three joint states.  This
walk-through builds one such block, evolves it in closed form, and checks
the result against a brute-force diagonalization of the truncated space.
"""

import numpy as np

from qutritdyn import BlockIndex, FockTruncation, SystemParams, block_unitary
from qutritdyn.evolution import block_indices, block_legs
from qutritdyn.hamiltonians import h_rwa_resonant
from qutritdyn.numerics import HermitianPropagator, max_abs_diff

params = SystemParams(g_a=1.0, g_b=0.5, delta_phi=0.3)

# Ladder configuration, one photon in mode a and two in mode b.
block = BlockIndex("L", 1, 2)
print("legs (level, n_a, n_b):", block_legs(block))
lam = block.rabi_frequency(params)
print(f"generalized Rabi frequency: {lam:.6f}")

t = 0.7
u = block_unitary(block, params, t)
np.set_printoptions(precision=4, suppress=True)
print("block propagator at t = 0.7:\n", u)

# The middle entry is always cos(lambda t), whatever the configuration.
print("u22 - cos(lambda t):", abs(u[1, 1] - np.cos(lam * t)))

# Brute force: diagonalize the whole 3 x 8 x 8 space once.
trunc = FockTruncation(8, 8)
prop = HermitianPropagator(h_rwa_resonant("L", params, trunc))
idx = block_indices(block, trunc)
print("deviation from full-space oracle:", max_abs_diff(prop.columns(t, idx)[idx], u))

# After one period 2 pi / lambda the block returns to the identity.
print("deviation from I after one period:", max_abs_diff(block_unitary(block, params, 2 * np.pi / lam), np.eye(3)))
