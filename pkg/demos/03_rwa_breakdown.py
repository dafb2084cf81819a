"""
How good is the rotating-wave approximation?
============================================

We integrate the full coupling, counter-rotating terms included, and
compare with the closed-form RWA populations over one Rabi period.  The
carrier frequency sets how fast the dropped terms oscillate.
"""

import numpy as np

from qutritdyn import CoherentPrep, FockTruncation, SystemParams, rwa_error

superposition = (2**-0.5, 0, 1j * 2**-0.5)
cases = [
    ("atom in |e>, vacuum", CoherentPrep(atom=(1, 0, 0)), FockTruncation(6, 6)),
    ("(|e> + i|g>)/sqrt2, vacuum", CoherentPrep(atom=superposition), FockTruncation(6, 6)),
    ("(|e> + i|g>)/sqrt2, one photon on average per mode", CoherentPrep(1.0, 1.0, atom=superposition),
     FockTruncation(15, 15)),
]

for label, prep, trunc in cases:
    # one period of the block at the mean photon numbers, so the pulse area is fixed
    t_end = 2 * np.pi / np.sqrt(2.0 * (1 + 0.5 * (prep.mean_a + prep.mean_b)))
    print(label)
    prev = None
    for omega in (25.0, 50.0, 100.0):
        params = SystemParams.resonant("L", omega, omega, 1.0, 1.0)
        steps = int(t_end * 2 * omega * 10 * np.sqrt(trunc.cutoff_a))
        err = rwa_error("L", params, prep, t_end, steps, trunc, samples=100)
        note = "" if prev is None else f"   (ratio {prev / err:.2f})"
        print(f"  Omega/g = {omega:5.0f}: max population error {err:.3e}{note}")
        prev = err

# In the vacuum cases every block starts on a single leg, and the two bright
# dressed states it excites pick up equal first-order shifts: these cancel in
# the populations and the error falls like 1/Omega^2 (ratio 4).  With photons
# present, the superposition lands inside blocks and the first-order
# 1/Omega term shows up (ratio 2).
