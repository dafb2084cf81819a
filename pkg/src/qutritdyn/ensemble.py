"""Population dynamics for coherent-state fields, closed form and numerical.

The initial state is a product ``(c_e|e> + c_i|i> + c_g|g>) |alpha> |beta>``.
The closed-form route expands it over dressed blocks and evolves each block
with :func:`qutritdyn.evolution.block_unitary`; the numerical routes
integrate the Schrodinger equation on the truncated joint space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.stats import poisson

from .evolution import BlockIndex, block_couplings, block_hamiltonian, block_legs, block_unitary, closed_form_exp
from .hamiltonians import Configuration, SystemParams, _free_energies, h_interaction_exact
from .numerics import integrate_schrodinger, integrate_schrodinger_matvec
from .operators import FockTruncation

__all__ = [
    "MASS_TOL",
    "DEFAULT_SAMPLES",
    "TruncationError",
    "CoherentPrep",
    "Trajectory",
    "coherent_amplitudes",
    "poisson_mass",
    "required_cutoff",
    "initial_joint_state",
    "populations",
    "evolve_ensemble",
    "amplitude_ode_check",
    "full_trajectory",
    "rwa_error",
]

MASS_TOL = 1e-10
DEFAULT_SAMPLES = 400


class TruncationError(ValueError):
    """The Fock cutoff drops more Poisson weight than allowed."""

    def __init__(self, mass: float, required: int, cutoff: int):
        self.mass = mass
        self.required = required
        self.cutoff = cutoff
        super().__init__(
            f"cutoff {cutoff} keeps Poisson mass {mass:.12f} < 1 - {MASS_TOL:g}; "
            f"use a cutoff of at least {required}"
        )


@dataclass(frozen=True)
class CoherentPrep:
    """Product of an atomic superposition and two coherent field states.

    ``alpha = sqrt(mean_a) * exp(1j * phase_a)``, likewise for ``beta``.
    ``atom`` holds the (c_e, c_i, c_g) amplitudes.
    """

    mean_a: float = 0.0
    mean_b: float = 0.0
    phase_a: float = 0.0
    phase_b: float = 0.0
    atom: tuple = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if self.mean_a < 0 or self.mean_b < 0:
            raise ValueError("mean photon numbers must be >= 0")
        c = np.asarray(self.atom, dtype=complex)
        if c.shape != (3,):
            raise ValueError(f"atom needs three amplitudes, got {self.atom!r}")
        if abs(np.vdot(c, c).real - 1.0) > 1e-12:
            raise ValueError(f"atom amplitudes are not normalized: {self.atom!r}")
        object.__setattr__(self, "atom", tuple(complex(x) for x in c))

    @classmethod
    def from_level(cls, level: str, **kw) -> "CoherentPrep":
        atom = {"e": (1, 0, 0), "i": (0, 1, 0), "g": (0, 0, 1)}[level]
        return cls(atom=atom, **kw)

    @property
    def alpha(self) -> complex:
        return np.sqrt(self.mean_a) * np.exp(1j * self.phase_a)

    @property
    def beta(self) -> complex:
        return np.sqrt(self.mean_b) * np.exp(1j * self.phase_b)


@dataclass
class Trajectory:
    times: np.ndarray
    p_e: np.ndarray
    p_i: np.ndarray
    p_g: np.ndarray
    meta: dict = field(default_factory=dict)

    def total(self) -> np.ndarray:
        return self.p_e + self.p_i + self.p_g

    def stacked(self) -> np.ndarray:
        """Shape ``(len(times), 3)`` array of (p_e, p_i, p_g)."""
        return np.column_stack([self.p_e, self.p_i, self.p_g])


def coherent_amplitudes(mean: float, phase: float, n) -> np.ndarray:
    """Fock amplitudes ``<n|alpha> = alpha^n e^{-|alpha|^2/2} / sqrt(n!)``.

    Magnitudes are the square roots of the Poisson weights, so
    ``|<n|alpha>|^2`` is the Poisson probability of ``n`` photons.
    """
    n = np.asarray(n)
    mag = np.sqrt(poisson.pmf(np.maximum(n, 0), mean))
    amp = mag * np.exp(1j * phase * n)
    return np.where(n >= 0, amp, 0.0)


def poisson_mass(mean: float, cutoff: int) -> float:
    return float(poisson.cdf(cutoff - 1, mean))


def required_cutoff(mean: float, tol: float = MASS_TOL) -> int:
    return int(poisson.ppf(1.0 - tol, mean)) + 1 if mean > 0 else 1


def _check_mass(prep: CoherentPrep, trunc: FockTruncation) -> float:
    mass = poisson_mass(prep.mean_a, trunc.cutoff_a) * poisson_mass(prep.mean_b, trunc.cutoff_b)
    if mass < 1.0 - MASS_TOL:
        need = max(required_cutoff(prep.mean_a), required_cutoff(prep.mean_b))
        # the product of two marginal masses can still fall short at `need`
        while poisson_mass(prep.mean_a, need) * poisson_mass(prep.mean_b, need) < 1.0 - MASS_TOL:
            need += 1
        raise TruncationError(mass, need, min(trunc.cutoff_a, trunc.cutoff_b))
    return mass


def initial_joint_state(prep: CoherentPrep, trunc: FockTruncation) -> np.ndarray:
    """Truncated, renormalized product state on the joint space."""
    _check_mass(prep, trunc)
    wa = coherent_amplitudes(prep.mean_a, prep.phase_a, np.arange(trunc.cutoff_a))
    wb = coherent_amplitudes(prep.mean_b, prep.phase_b, np.arange(trunc.cutoff_b))
    psi = np.einsum("x,a,b->xab", np.asarray(prep.atom), wa, wb).ravel()
    return psi / np.linalg.norm(psi)


def populations(psi: np.ndarray, trunc: FockTruncation) -> np.ndarray:
    """Atomic level populations (p_e, p_i, p_g) of a joint-space state."""
    p = np.abs(np.asarray(psi).reshape(3, trunc.cutoff_a, trunc.cutoff_b)) ** 2
    return p.sum(axis=(1, 2))


def _block_table(config: Configuration, prep: CoherentPrep, trunc: FockTruncation):
    """Blocks touching the truncated support and their initial leg amplitudes."""
    na_max, nb_max = trunc.cutoff_a, trunc.cutoff_b
    wa = coherent_amplitudes(prep.mean_a, prep.phase_a, np.arange(na_max))
    wb = coherent_amplitudes(prep.mean_b, prep.phase_b, np.arange(nb_max))
    c = prep.atom
    blocks, amps = [], []
    # fixed iteration order keeps the population sums reproducible
    for n_a in range(-1, na_max + 1):
        for n_b in range(-1, nb_max + 1):
            block = BlockIndex(config, n_a, n_b)
            v = np.zeros(3, dtype=complex)
            for k, (_, la, lb) in enumerate(block_legs(block)):
                if trunc.contains(la, lb):
                    v[k] = c[k] * wa[la] * wb[lb]
            if np.any(v != 0):
                blocks.append(block)
                amps.append(v)
    return blocks, np.array(amps).reshape(-1, 3)


def evolve_ensemble(
    config,
    params: SystemParams,
    prep: CoherentPrep,
    times,
    trunc: FockTruncation | None = None,
) -> Trajectory:
    """Closed-form resonant RWA populations for a coherent-state preparation.

    Each dressed block is evolved exactly; amplitudes that start on legs
    beyond the cutoff are taken as zero (their Poisson weight is below
    ``MASS_TOL``) and the retained state is renormalized.  Block legs that
    fall beyond the cutoff during the evolution are kept, so no population
    is reflected at the truncation edge.
    """
    config = Configuration.parse(config)
    trunc = trunc or FockTruncation()
    mass = _check_mass(prep, trunc)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    blocks, amps = _block_table(config, prep, trunc)
    amps = amps / np.sqrt(np.sum(np.abs(amps) ** 2))

    couplings = np.array([block_couplings(b, params) for b in blocks])
    A = couplings[:, 0][None, :] * times[:, None]
    B = couplings[:, 1][None, :] * times[:, None]
    U = closed_form_exp(A, B)  # (T, blocks, 3, 3)
    evolved = np.einsum("tbjk,bk->tbj", U, amps)
    pops = np.sum(np.abs(evolved) ** 2, axis=1)
    return Trajectory(
        times=times,
        p_e=pops[:, 0],
        p_i=pops[:, 1],
        p_g=pops[:, 2],
        meta={"blocks": len(blocks), "poisson_mass": mass},
    )


def amplitude_ode_check(
    config,
    params: SystemParams,
    block: BlockIndex,
    t_end: float,
    steps: int = 10_000,
    psi0=None,
) -> float:
    """Integrate the block amplitude equations with RK4 and compare to the closed form.

    Returns the max-entry deviation between the integrated amplitudes at
    ``t_end`` and ``block_unitary(block, params, t_end) @ psi0``.  The default
    initial vector is an unequal superposition of all three legs.
    """
    block = BlockIndex(Configuration.parse(config), block.n_a, block.n_b)
    if psi0 is None:
        psi0 = np.array([0.6, 0.48j, -0.64], dtype=complex)
    psi0 = np.asarray(psi0, dtype=complex)
    psi0 = psi0 / np.linalg.norm(psi0)
    if t_end == 0.0:
        return 0.0
    h = block_hamiltonian(block, params)
    psi = integrate_schrodinger(lambda t: h, psi0, t_end, steps)
    exact = block_unitary(block, params, t_end) @ psi0
    return float(np.max(np.abs(psi - exact)))


def full_trajectory(
    params: SystemParams,
    prep: CoherentPrep,
    times,
    steps_per_sample: int,
    trunc: FockTruncation,
) -> Trajectory:
    """RK4 populations under the full interaction-picture coupling (no RWA).

    ``times`` must start at 0 and be increasing; each interval between
    samples is split into ``steps_per_sample`` RK4 steps.
    """
    times = np.asarray(times, dtype=float)
    if times[0] != 0.0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must start at 0 and increase strictly")
    energies = _free_energies(params, trunc)
    h_int = sparse.csr_matrix(h_interaction_exact(params, trunc))

    def apply_h(t, y):
        ph = np.exp(1j * energies * t)
        return ph * (h_int @ (ph.conj() * y))

    psi = initial_joint_state(prep, trunc)
    pops = [populations(psi, trunc)]
    for t0, t1 in zip(times[:-1], times[1:]):
        psi = integrate_schrodinger_matvec(
            apply_h, psi, t1, steps_per_sample, t_start=t0, norm_tol=1e-6
        )
        pops.append(populations(psi, trunc))
    pops = np.array(pops)
    return Trajectory(times, pops[:, 0], pops[:, 1], pops[:, 2])


def rwa_error(
    config,
    params: SystemParams,
    prep: CoherentPrep,
    t_end: float,
    steps: int,
    trunc: FockTruncation,
    samples: int = 200,
) -> float:
    """Max population difference between full dynamics and the RWA closed form.

    The full run integrates the interaction-picture Hamiltonian with all
    counter-rotating terms kept; ``steps`` is the total RK4 step count over
    ``[0, t_end]`` (rounded up to a multiple of ``samples``).  The level
    energies in ``params`` must make both modes resonant for ``config``.
    """
    config = Configuration.parse(config)
    d_a, d_b = params.detunings(config)
    scale = max(abs(params.Omega_a), abs(params.Omega_b), 1.0)
    if abs(d_a) > 1e-12 * scale or abs(d_b) > 1e-12 * scale:
        raise ValueError(f"RWA closed form needs exact resonance, got detunings ({d_a}, {d_b})")
    if params.g_a == 0 and params.g_b == 0:
        return 0.0
    times = np.linspace(0.0, t_end, samples + 1)
    per = max(2, -(-steps // samples))
    full = full_trajectory(params, prep, times, per, trunc)
    rwa = evolve_ensemble(config, params, prep, times, trunc)
    return float(np.max(np.abs(full.stacked() - rwa.stacked())))
