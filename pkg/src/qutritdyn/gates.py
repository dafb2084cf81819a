"""Single-qutrit gates and resonant pulse-sequence synthesis.

A pulse is one semiclassical propagator ``exp(-i M(A, B))`` with
``A = theta_a e^{i phi_a}`` and ``B = theta_b e^{i phi_b}``.  Products of
such pulses generate all of SU(3), but a single pulse cannot realize a
diagonal phase gate: its diagonal entries are always real.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .evolution import closed_form_exp, semiclassical_amplitudes
from .hamiltonians import Configuration, SystemParams
from .numerics import unitarity_deviation

__all__ = [
    "Z3Gate",
    "Pulse",
    "PulseSequence",
    "SynthesisResult",
    "NonUnitaryTargetError",
    "x3",
    "z3",
    "g2",
    "gate_fidelity",
    "compile_pulse_sequence",
    "random_sequence",
    "synthesize",
    "pulse_to_physical",
]

log = logging.getLogger(__name__)


class NonUnitaryTargetError(ValueError):
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"target is not unitary (deviation {deviation:.3e})")


def x3(phi: float) -> np.ndarray:
    return np.diag([1.0, 1.0, np.exp(1j * phi)])


@dataclass(frozen=True)
class Z3Gate:
    matrix: np.ndarray
    unitarity_deviation: float

    @property
    def is_unitary(self) -> bool:
        return self.unitarity_deviation < 1e-10


def z3(c0: complex, c1: complex, c2: complex) -> Z3Gate:
    """The three-parameter Z3 pattern ``[[c0,0,-c2],[0,-c1,c2],[-c2*,c2*,c2*]]``.

    Most parameter choices do not give a unitary matrix; the deviation
    ``max|Z^dagger Z - I|`` is reported rather than raised.
    """
    c2b = np.conj(c2)
    m = np.array([[c0, 0, -c2], [0, -c1, c2], [-c2b, c2b, c2b]], dtype=complex)
    return Z3Gate(m, unitarity_deviation(m))


def g2(y) -> np.ndarray:
    """Two-qutrit gate applying ``y`` to the target when the control is |2>."""
    y = np.asarray(y, dtype=complex)
    if y.shape != (3, 3):
        raise ValueError(f"g2 expects a 3x3 matrix, got {y.shape}")
    out = np.eye(9, dtype=complex)
    out[6:, 6:] = y
    return out


def gate_fidelity(target, u) -> float:
    """Global-phase-invariant overlap ``|tr(target^dagger u)| / 3``."""
    target = np.asarray(target)
    f = abs(np.trace(target.conj().T @ np.asarray(u))) / target.shape[0]
    return float(min(f, 1.0))  # rounding can push a perfect match a few ulps above 1


@dataclass(frozen=True)
class Pulse:
    theta_a: float
    theta_b: float
    phi_a: float = 0.0
    phi_b: float = 0.0

    @property
    def A(self) -> complex:
        return self.theta_a * np.exp(1j * self.phi_a)

    @property
    def B(self) -> complex:
        return self.theta_b * np.exp(1j * self.phi_b)

    def unitary(self) -> np.ndarray:
        return closed_form_exp(self.A, self.B)

    def inverse(self) -> "Pulse":
        # exp(+iM) = exp(-i(-M)): shift both phases by pi
        return Pulse(self.theta_a, self.theta_b, self.phi_a + np.pi, self.phi_b + np.pi)

    def to_dict(self) -> dict:
        return {
            "theta_a": self.theta_a,
            "theta_b": self.theta_b,
            "phi_a": self.phi_a,
            "phi_b": self.phi_b,
        }


@dataclass(frozen=True)
class PulseSequence:
    pulses: tuple = ()
    max_pulses: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "pulses", tuple(self.pulses))
        if self.max_pulses is not None and len(self.pulses) > self.max_pulses:
            raise ValueError(f"{len(self.pulses)} pulses exceed the limit {self.max_pulses}")

    def __len__(self):
        return len(self.pulses)

    def as_vector(self) -> np.ndarray:
        return np.array(
            [[p.theta_a, p.theta_b, p.phi_a, p.phi_b] for p in self.pulses], dtype=float
        ).ravel()

    @classmethod
    def from_vector(cls, x, max_pulses: int | None = None) -> "PulseSequence":
        x = np.asarray(x, dtype=float).reshape(-1, 4)
        pulses = []
        for ta, tb, pa, pb in x:
            # keep magnitudes nonnegative; a sign flip is a phase shift of pi
            if ta < 0:
                ta, pa = -ta, pa + np.pi
            if tb < 0:
                tb, pb = -tb, pb + np.pi
            pulses.append(
                Pulse(float(ta), float(tb), float(np.mod(pa, 2 * np.pi)), float(np.mod(pb, 2 * np.pi)))
            )
        return cls(tuple(pulses), max_pulses)


def _compile_vector(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1, 4)
    if x.shape[0] == 0:
        return np.eye(3, dtype=complex)
    us = closed_form_exp(x[:, 0] * np.exp(1j * x[:, 2]), x[:, 1] * np.exp(1j * x[:, 3]))
    out = us[0]
    for u in us[1:]:
        out = u @ out
    return out


def compile_pulse_sequence(seq: PulseSequence) -> np.ndarray:
    """Ordered product of the pulse propagators; the first pulse acts first."""
    return _compile_vector(seq.as_vector())


def random_sequence(
    n_pulses: int, rng: np.random.Generator, theta_range=(0.2, 2.5)
) -> PulseSequence:
    x = np.empty((n_pulses, 4))
    x[:, :2] = rng.uniform(*theta_range, size=(n_pulses, 2))
    x[:, 2:] = rng.uniform(0, 2 * np.pi, size=(n_pulses, 2))
    return PulseSequence.from_vector(x)


@dataclass
class SynthesisResult:
    sequence: PulseSequence
    fidelity: float
    converged: bool
    tol: float
    starts_run: int
    best_start: int
    history: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "pulses": [p.to_dict() for p in self.sequence.pulses],
            "fidelity": self.fidelity,
            "converged": self.converged,
        }


def synthesize(
    target,
    max_pulses: int = 3,
    tol: float = 1e-6,
    starts: int = 32,
    seed: int = 0,
    maxfev: int = 20_000,
    restarts: int = 3,
) -> SynthesisResult:
    """Search pulse parameters whose product matches ``target`` up to global phase.

    Each start draws ``4 * max_pulses`` parameters from a seeded generator
    and runs Nelder-Mead on the infidelity ``1 - |tr(T^dagger U)|/3``; the
    simplex is rebuilt around the incumbent up to ``restarts`` times, which
    helps the method past stalls in 12+ dimensions.  The search stops at the
    first start reaching ``1 - tol``; otherwise the best start wins, ties
    broken by the lower start index.

    Raises
    ------
    NonUnitaryTargetError
        If ``target`` deviates from unitary by more than 1e-8.
    """
    target = np.asarray(target, dtype=complex)
    if target.shape != (3, 3):
        raise ValueError(f"target must be 3x3, got {target.shape}")
    dev = unitarity_deviation(target)
    if dev > 1e-8:
        raise NonUnitaryTargetError(dev)
    if max_pulses < 0:
        raise ValueError("max_pulses must be >= 0")

    target_h = target.conj().T

    def infidelity(x):
        return 1.0 - abs(np.trace(target_h @ _compile_vector(x))) / 3.0

    identity_fid = gate_fidelity(target, np.eye(3))
    best = (identity_fid, 0, np.zeros(0))
    if identity_fid >= 1.0 - tol or max_pulses == 0:
        seq = PulseSequence((), max_pulses)
        return SynthesisResult(seq, identity_fid, identity_fid >= 1.0 - tol, tol, 0, -1)

    rng = np.random.default_rng(seed)
    history = []
    runs = 0
    for start in range(starts):
        runs += 1
        x0 = np.empty((max_pulses, 4))
        x0[:, :2] = rng.uniform(0.0, np.pi, size=(max_pulses, 2))
        x0[:, 2:] = rng.uniform(0.0, 2 * np.pi, size=(max_pulses, 2))
        x = x0.ravel()
        f = infidelity(x)
        for _ in range(restarts + 1):
            res = minimize(
                infidelity,
                x,
                method="Nelder-Mead",
                options={
                    "maxfev": maxfev,
                    "xatol": 1e-10,
                    "fatol": 1e-14,
                    "adaptive": True,
                },
            )
            improved = res.fun < f - 1e-15
            x, f = res.x, res.fun
            if f <= 0.1 * tol or not improved:
                break
        fid = 1.0 - f
        history.append(fid)
        log.debug("start %d: fidelity %.12f", start, fid)
        if fid > best[0]:
            best = (fid, start, x)
        if fid >= 1.0 - tol:
            break

    fid, start, x = best
    if x.size == 0:
        seq = PulseSequence((), max_pulses)
    else:
        seq = PulseSequence.from_vector(x, max_pulses)
    fid = gate_fidelity(target, compile_pulse_sequence(seq))
    return SynthesisResult(seq, fid, fid >= 1.0 - tol, tol, runs, start, history)


def pulse_to_physical(
    pulse: Pulse, config, g_a: float, g_b: float, duration: float, delta_phi: float = 0.0
) -> tuple[complex, complex]:
    """Coherent amplitudes ``(alpha, beta)`` that realize ``pulse`` in time ``duration``.

    Inverts the configuration table used by
    :func:`qutritdyn.evolution.semiclassical_amplitudes` for the given
    couplings and phase difference.
    """
    config = Configuration.parse(config)
    if g_a <= 0 or g_b <= 0 or duration <= 0:
        raise ValueError("couplings and duration must be positive")
    A, B = pulse.A, pulse.B
    ph = np.exp(-1j * delta_phi)
    if config is Configuration.LADDER:
        alpha = A / (g_a * duration)
        beta = B / (ph * g_b * duration)
    elif config is Configuration.LAMBDA:
        alpha = A / (g_a * duration)
        beta = np.conj(-B / (ph * g_b * duration))
    else:
        alpha = np.conj(-A / (g_a * duration))
        beta = B / (ph * g_b * duration)
    return complex(alpha), complex(beta)


def _physical_round_trip(pulse, config, g_a, g_b, duration, delta_phi=0.0):
    alpha, beta = pulse_to_physical(pulse, config, g_a, g_b, duration, delta_phi)
    params = SystemParams(g_a=g_a, g_b=g_b, delta_phi=delta_phi)
    gen = semiclassical_amplitudes(config, params, alpha, beta, duration)
    return closed_form_exp(gen.A, gen.B)
