"""Three-level atom in two quantized modes: closed-form propagators, ensembles and qutrit gates."""

from .ensemble import CoherentPrep, Trajectory, evolve_ensemble, rwa_error
from .evolution import BlockIndex, SemiclassicalGenerator, block_unitary, closed_form_exp
from .gates import Pulse, PulseSequence, compile_pulse_sequence, gate_fidelity, synthesize, x3, z3, g2
from .hamiltonians import Configuration, SystemParams
from .numerics import expm_unitary
from .operators import FockTruncation

__version__ = "0.1.0"

__all__ = [
    "BlockIndex",
    "CoherentPrep",
    "Configuration",
    "FockTruncation",
    "Pulse",
    "PulseSequence",
    "SemiclassicalGenerator",
    "SystemParams",
    "Trajectory",
    "block_unitary",
    "closed_form_exp",
    "compile_pulse_sequence",
    "evolve_ensemble",
    "expm_unitary",
    "g2",
    "gate_fidelity",
    "rwa_error",
    "synthesize",
    "x3",
    "z3",
]
