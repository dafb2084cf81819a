"""
Qutrit gates from resonant pulses
=================================

A single two-mode pulse is a 3x3 unitary with a real diagonal, so phase
gates need several pulses.  The synthesizer searches pulse areas and
phases with a seeded multi-start Nelder-Mead.
"""

import numpy as np

from qutritdyn import compile_pulse_sequence, gate_fidelity, synthesize, x3
from qutritdyn.gates import pulse_to_physical

target = x3(np.pi / 2)
for k in (1, 2, 3):
    res = synthesize(target, max_pulses=k, starts=16, seed=0)
    print(f"X3(pi/2) with {k} pulse(s): fidelity {res.fidelity:.8f}, converged={res.converged}")

# A cyclic permutation |0> -> |1> -> |2> -> |0>.
cycle = np.eye(3)[:, [1, 2, 0]]
res = synthesize(cycle, max_pulses=3, seed=1)
print(f"\ncycle: fidelity {res.fidelity:.10f} with {len(res.sequence)} pulses")
for p in res.sequence.pulses:
    print(f"  theta_a={p.theta_a:.4f} theta_b={p.theta_b:.4f} phi_a={p.phi_a:.4f} phi_b={p.phi_b:.4f}")

# Each pulse maps to coherent amplitudes for a chosen duration and coupling.
for p in res.sequence.pulses:
    alpha, beta = pulse_to_physical(p, "L", g_a=1.0, g_b=1.0, duration=1.0)
    print(f"  alpha={alpha:.4f}  beta={beta:.4f}")

print("check:", gate_fidelity(cycle, compile_pulse_sequence(res.sequence)))
