"""Hamiltonians of a three-level atom coupled to two quantized modes.

Mode ``a`` drives the i-g transition, mode ``b`` the e-i transition.  Which
level of each pair lies higher decides which interaction terms conserve
energy, and that choice is what distinguishes the three configurations:

=============  ==================  ==================
configuration  upper level, mode a upper level, mode b
=============  ==================  ==================
ladder (L)     i                   e
lambda         i                   i
vee (V)        g                   e
=============  ==================  ==================

The exact dipole coupling is::

    H_int = g_a (s_ig - s_gi)(a - a+) + g_b (s_ei e^{-i dphi} - s_ie e^{i dphi})(b - b+)

with ``s_xy = |x><y|`` and hbar = 1.  Every RWA Hamiltonian below is the
subset of those eight terms in which an atomic raising step is paired with a
photon absorption (or the reverse).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .operators import (
    FockTruncation,
    annihilator,
    creator,
    embed,
    ket_bra,
    number_operator,
)

__all__ = [
    "Configuration",
    "SystemParams",
    "InteractionTerm",
    "h_atom",
    "h_field",
    "h_free",
    "interaction_terms",
    "h_interaction_exact",
    "h_rwa_resonant",
    "h_rwa_interaction_picture",
    "h_counter_rotating",
    "excitation_operator",
    "find_conserved_charges",
    "commutator",
]


class Configuration(Enum):
    LADDER = "L"
    LAMBDA = "lambda"
    VEE = "V"

    @classmethod
    def parse(cls, name) -> "Configuration":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {
            "l": cls.LADDER,
            "ladder": cls.LADDER,
            "lambda": cls.LAMBDA,
            "v": cls.VEE,
            "vee": cls.VEE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(
                f"unknown configuration {name!r}; use L|ladder, lambda or V|vee"
            ) from None

    @property
    def upper_a(self) -> str:
        """Higher-energy level of the i-g pair driven by mode a."""
        return "g" if self is Configuration.VEE else "i"

    @property
    def upper_b(self) -> str:
        """Higher-energy level of the e-i pair driven by mode b."""
        return "i" if self is Configuration.LAMBDA else "e"

    @property
    def sign_a(self) -> int:
        return -1 if self is Configuration.VEE else 1

    @property
    def sign_b(self) -> int:
        return -1 if self is Configuration.LAMBDA else 1

    @property
    def leg_shifts(self):
        """Photon-number offsets ``(dn_a, dn_b)`` of the e, i, g legs of a block.

        A dressed block labelled ``(n_a, n_b)`` is spanned by
        ``|x, n_a + dn_a[x], n_b + dn_b[x]>`` for ``x`` in (e, i, g).  These
        values are frozen here and re-derived numerically by
        :func:`find_conserved_charges` in the test suite.
        """
        return _LEG_SHIFTS[self]


_LEG_SHIFTS = {
    Configuration.LADDER: ((0, 0), (0, 1), (1, 1)),
    Configuration.LAMBDA: ((0, 0), (0, -1), (1, -1)),
    Configuration.VEE: ((0, 0), (0, 1), (-1, 1)),
}


@dataclass(frozen=True)
class SystemParams:
    """Frequencies (angular), couplings and phases of the atom-field system.

    ``delta_a`` and ``delta_b`` are the detunings used by the
    interaction-picture RWA Hamiltonian.  They are stored explicitly so a
    caller can scan detuning without touching level energies; use
    :meth:`with_detunings` to set them consistently from the frequencies.
    """

    omega_e: float = 0.0
    omega_i: float = 0.0
    omega_g: float = 0.0
    Omega_a: float = 0.0
    Omega_b: float = 0.0
    g_a: float = 1.0
    g_b: float = 1.0
    delta_phi: float = 0.0
    delta_a: float = 0.0
    delta_b: float = 0.0

    def __post_init__(self):
        values = [getattr(self, f) for f in self.__dataclass_fields__]
        if not all(np.isfinite(v) for v in values):
            raise ValueError(f"all parameters must be finite: {self}")
        if self.g_a < 0 or self.g_b < 0:
            raise ValueError(f"couplings must be >= 0, got g_a={self.g_a}, g_b={self.g_b}")

    def level_energy(self, level: str) -> float:
        return {"e": self.omega_e, "i": self.omega_i, "g": self.omega_g}[level]

    def detunings(self, config) -> tuple[float, float]:
        """Mode minus transition frequency, per configuration.

        L: (Omega_a - w_ig, Omega_b - w_ei); lambda: (Omega_a - w_ig,
        Omega_b - w_ie); V: (Omega_a - w_gi, Omega_b - w_ei), with
        ``w_xy = w_x - w_y``.
        """
        config = Configuration.parse(config)
        lower_a = "g" if config.upper_a == "i" else "i"
        lower_b = "i" if config.upper_b == "e" else "e"
        w_a = self.level_energy(config.upper_a) - self.level_energy(lower_a)
        w_b = self.level_energy(config.upper_b) - self.level_energy(lower_b)
        return self.Omega_a - w_a, self.Omega_b - w_b

    def with_detunings(self, config) -> "SystemParams":
        d_a, d_b = self.detunings(config)
        return replace(self, delta_a=d_a, delta_b=d_b)

    @classmethod
    def resonant(
        cls,
        config,
        Omega_a: float,
        Omega_b: float,
        g_a: float = 1.0,
        g_b: float = 1.0,
        delta_phi: float = 0.0,
        omega_g: float = 0.0,
    ) -> "SystemParams":
        """Level energies placed so both modes are exactly resonant."""
        config = Configuration.parse(config)
        if config is Configuration.LADDER:
            w_i = omega_g + Omega_a
            w_e = w_i + Omega_b
        elif config is Configuration.LAMBDA:
            w_i = omega_g + Omega_a
            w_e = w_i - Omega_b
        else:
            w_i = omega_g - Omega_a
            w_e = w_i + Omega_b
        return cls(
            omega_e=w_e,
            omega_i=w_i,
            omega_g=omega_g,
            Omega_a=Omega_a,
            Omega_b=Omega_b,
            g_a=g_a,
            g_b=g_b,
            delta_phi=delta_phi,
        )


@dataclass(frozen=True)
class InteractionTerm:
    """One product ``coefficient * |to><from| (x) photon_op`` of the exact coupling.

    ``mode`` is "a" or "b", ``photon`` is "annihilate" or "create".
    """

    label: str
    mode: str
    atom_to: str
    atom_from: str
    photon: str
    coefficient: complex

    def raises_atom(self, config: Configuration) -> bool:
        upper = config.upper_a if self.mode == "a" else config.upper_b
        return self.atom_to == upper

    def is_rotating(self, config) -> bool:
        # energy conserving: raise + absorb, or lower + emit
        config = Configuration.parse(config)
        return self.raises_atom(config) == (self.photon == "annihilate")

    def matrix(self, trunc: FockTruncation) -> np.ndarray:
        n = trunc.cutoff_a if self.mode == "a" else trunc.cutoff_b
        op = annihilator(n) if self.photon == "annihilate" else creator(n)
        eye_a = np.eye(trunc.cutoff_a)
        eye_b = np.eye(trunc.cutoff_b)
        atom = ket_bra(self.atom_to, self.atom_from)
        if self.mode == "a":
            return self.coefficient * embed(atom, op, eye_b, trunc)
        return self.coefficient * embed(atom, eye_a, op, trunc)


def interaction_terms(params: SystemParams) -> list[InteractionTerm]:
    """The eight terms of the exact dipole coupling, expanded."""
    ga, gb = params.g_a, params.g_b
    em = np.exp(-1j * params.delta_phi)
    ep = np.exp(1j * params.delta_phi)
    return [
        InteractionTerm("s_ig a", "a", "i", "g", "annihilate", ga),
        InteractionTerm("s_ig a+", "a", "i", "g", "create", -ga),
        InteractionTerm("s_gi a", "a", "g", "i", "annihilate", -ga),
        InteractionTerm("s_gi a+", "a", "g", "i", "create", ga),
        InteractionTerm("s_ei b", "b", "e", "i", "annihilate", gb * em),
        InteractionTerm("s_ei b+", "b", "e", "i", "create", -gb * em),
        InteractionTerm("s_ie b", "b", "i", "e", "annihilate", -gb * ep),
        InteractionTerm("s_ie b+", "b", "i", "e", "create", gb * ep),
    ]


def h_atom(params: SystemParams) -> np.ndarray:
    return np.diag([params.omega_e, params.omega_i, params.omega_g]).astype(complex)


def h_field(params: SystemParams, trunc: FockTruncation) -> np.ndarray:
    eye3 = np.eye(3)
    eye_a, eye_b = np.eye(trunc.cutoff_a), np.eye(trunc.cutoff_b)
    return params.Omega_a * embed(
        eye3, number_operator(trunc.cutoff_a), eye_b, trunc
    ) + params.Omega_b * embed(eye3, eye_a, number_operator(trunc.cutoff_b), trunc)


def _free_energies(params: SystemParams, trunc: FockTruncation) -> np.ndarray:
    """Diagonal of the free Hamiltonian in joint-basis order."""
    atom = np.array([params.omega_e, params.omega_i, params.omega_g])
    na = np.arange(trunc.cutoff_a) * params.Omega_a
    nb = np.arange(trunc.cutoff_b) * params.Omega_b
    return (atom[:, None, None] + na[None, :, None] + nb[None, None, :]).ravel()


def h_free(params: SystemParams, trunc: FockTruncation) -> np.ndarray:
    """Atom plus field Hamiltonian on the joint space (zero-point energy dropped)."""
    eye_a, eye_b = np.eye(trunc.cutoff_a), np.eye(trunc.cutoff_b)
    return embed(h_atom(params), eye_a, eye_b, trunc) + h_field(params, trunc)


def h_interaction_exact(params: SystemParams, trunc: FockTruncation) -> np.ndarray:
    ga, gb = params.g_a, params.g_b
    a = annihilator(trunc.cutoff_a)
    b = annihilator(trunc.cutoff_b)
    eye_a, eye_b = np.eye(trunc.cutoff_a), np.eye(trunc.cutoff_b)
    atom_a = ket_bra("i", "g") - ket_bra("g", "i")
    atom_b = ket_bra("e", "i") * np.exp(-1j * params.delta_phi) - ket_bra(
        "i", "e"
    ) * np.exp(1j * params.delta_phi)
    return ga * embed(atom_a, a - a.conj().T, eye_b, trunc) + gb * embed(
        atom_b, eye_a, b - b.conj().T, trunc
    )


def h_rwa_resonant(config, params: SystemParams, trunc: FockTruncation) -> np.ndarray:
    """Time-independent RWA coupling at exact resonance.

    L:      g_a (s_gi a+ + s_ig a) + g_b (s_ie b+ e^{i dphi} + s_ei b e^{-i dphi})
    lambda: g_a (s_gi a+ + s_ig a) - g_b (s_ie b e^{i dphi} + s_ei b+ e^{-i dphi})
    V:     -g_a (s_gi a + s_ig a+) + g_b (s_ie b+ e^{i dphi} + s_ei b e^{-i dphi})
    """
    config = Configuration.parse(config)
    a = annihilator(trunc.cutoff_a)
    b = annihilator(trunc.cutoff_b)
    ad, bd = a.conj().T, b.conj().T
    eye_a, eye_b = np.eye(trunc.cutoff_a), np.eye(trunc.cutoff_b)
    ep = np.exp(1j * params.delta_phi)
    em = np.conj(ep)
    s_ig, s_gi = ket_bra("i", "g"), ket_bra("g", "i")
    s_ei, s_ie = ket_bra("e", "i"), ket_bra("i", "e")

    if config is Configuration.VEE:
        part_a = embed(s_gi, a, eye_b, trunc) + embed(s_ig, ad, eye_b, trunc)
    else:
        part_a = embed(s_gi, ad, eye_b, trunc) + embed(s_ig, a, eye_b, trunc)
    if config is Configuration.LAMBDA:
        part_b = ep * embed(s_ie, eye_a, b, trunc) + em * embed(s_ei, eye_a, bd, trunc)
    else:
        part_b = ep * embed(s_ie, eye_a, bd, trunc) + em * embed(s_ei, eye_a, b, trunc)
    return config.sign_a * params.g_a * part_a + config.sign_b * params.g_b * part_b


def h_rwa_interaction_picture(
    config, params: SystemParams, t: float, trunc: FockTruncation
) -> np.ndarray:
    """RWA coupling in the interaction picture with detuning phases.

    The term that raises the atom while absorbing a photon of mode ``x``
    carries ``exp(-i delta_x t)``; its conjugate carries ``exp(+i delta_x t)``.
    Detunings are read from ``params.delta_a`` / ``params.delta_b``.
    """
    config = Configuration.parse(config)
    out = np.zeros((trunc.dim, trunc.dim), dtype=complex)
    for term in interaction_terms(params):
        if not term.is_rotating(config):
            continue
        delta = params.delta_a if term.mode == "a" else params.delta_b
        sign = -1.0 if term.raises_atom(config) else 1.0
        out += np.exp(1j * sign * delta * t) * term.matrix(trunc)
    return out


def h_counter_rotating(params: SystemParams, t: float, trunc: FockTruncation) -> np.ndarray:
    """Full interaction-picture coupling ``e^{i H0 t} H_int e^{-i H0 t}``.

    Keeps rotating and counter-rotating terms alike, so it is independent of
    the configuration; the level energies in ``params`` decide which terms
    oscillate slowly.
    """
    phases = np.exp(1j * _free_energies(params, trunc) * t)
    h = h_interaction_exact(params, trunc)
    return phases[:, None] * h * phases.conj()[None, :]


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def excitation_operator(config, trunc: FockTruncation) -> np.ndarray:
    """Total excitation number conserved by the resonant RWA coupling.

    L: a+a + b+b + 2 s_ee + s_ii;  lambda: a+a + b+b + s_ii;
    V: a+a + b+b + s_ee + s_gg.
    """
    config = Configuration.parse(config)
    weights = _excitation_weights(config)
    atom = np.diag(weights).astype(complex)
    eye_a, eye_b = np.eye(trunc.cutoff_a), np.eye(trunc.cutoff_b)
    return (
        embed(np.eye(3), number_operator(trunc.cutoff_a), eye_b, trunc)
        + embed(np.eye(3), eye_a, number_operator(trunc.cutoff_b), trunc)
        + embed(atom, eye_a, eye_b, trunc)
    )


def _excitation_weights(config: Configuration) -> tuple[int, int, int]:
    # sum of both per-mode charges, shifted so the lowest level has weight 0
    shifts = config.leg_shifts
    w = [-(da + db) for da, db in shifts]
    low = min(w)
    return tuple(x - low for x in w)


def find_conserved_charges(
    config, trunc: FockTruncation | None = None, search=range(-2, 3), seed: int = 7
) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Search small integer weights ``k`` with ``[H_rwa, n_x + sum_l k_l s_ll] = 0``.

    Done separately for each mode (``x`` = a, b) with the weight of ``|e>``
    pinned to 0, so each charge equals that mode's photon number on the
    ``|e>`` leg.  Returns ``(k_a, k_b)`` as ``(k_e, k_i, k_g)`` triples.
    Generic random couplings and phase are used so accidental commutation
    is ruled out.
    """
    config = Configuration.parse(config)
    trunc = trunc or FockTruncation(4, 4)
    rng = np.random.default_rng(seed)
    params = SystemParams(
        g_a=float(rng.uniform(0.5, 1.5)),
        g_b=float(rng.uniform(0.5, 1.5)),
        delta_phi=float(rng.uniform(0.1, 3.0)),
    )
    h = h_rwa_resonant(config, params, trunc)
    eye_a, eye_b = np.eye(trunc.cutoff_a), np.eye(trunc.cutoff_b)
    number_ops = {
        "a": embed(np.eye(3), number_operator(trunc.cutoff_a), eye_b, trunc),
        "b": embed(np.eye(3), eye_a, number_operator(trunc.cutoff_b), trunc),
    }
    found = {}
    for mode, n_op in number_ops.items():
        hits = []
        for k_i, k_g in itertools.product(search, repeat=2):
            atom = np.diag([0.0, k_i, k_g]).astype(complex)
            q = n_op + embed(atom, eye_a, eye_b, trunc)
            if np.max(np.abs(commutator(h, q))) < 1e-10:
                hits.append((0, k_i, k_g))
        if len(hits) != 1:
            raise RuntimeError(f"expected one conserved charge for mode {mode}, found {hits}")
        found[mode] = hits[0]
    return found["a"], found["b"]
