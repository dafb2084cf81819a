"""Closed-form evolution operators for the three-level atom.

Every propagator here is an exponential of the bordered generator::

        [[0,  B,  0],
    M =  [B*, 0,  A],
         [0,  A*, 0]]

Because ``M^3 = G^2 M`` with ``G^2 = |A|^2 + |B|^2``, the exponential
collapses to::

    exp(-i M) = I + (M^2 / G^2)(cos G - 1) - i (M / G) sin G

which is used both for the semiclassical (coherent-amplitude) generator and
for each three-dimensional dressed block of the quantized problem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonians import Configuration, SystemParams, h_rwa_resonant
from .operators import FockTruncation, joint_index, joint_ket

__all__ = [
    "SemiclassicalGenerator",
    "closed_form_exp",
    "semiclassical_unitary",
    "semiclassical_amplitudes",
    "semiclassical_from_params",
    "semiclassical_parts",
    "BlockIndex",
    "block_legs",
    "block_basis",
    "block_indices",
    "block_couplings",
    "block_hamiltonian",
    "block_unitary",
    "restrict",
    "joint_block_hamiltonian",
]


@dataclass(frozen=True)
class SemiclassicalGenerator:
    A: complex
    B: complex

    @property
    def G(self) -> float:
        return float(np.sqrt(abs(self.A) ** 2 + abs(self.B) ** 2))

    def matrix(self) -> np.ndarray:
        A, B = complex(self.A), complex(self.B)
        return np.array(
            [[0, B, 0], [np.conj(B), 0, A], [0, np.conj(A), 0]], dtype=complex
        )


def closed_form_exp(A, B) -> np.ndarray:
    """Vectorized ``exp(-i M(A, B))``; output shape is ``broadcast(A, B).shape + (3, 3)``.

    ``(cos G - 1)/G^2`` and ``sin G / G`` are written with ``np.sinc`` so the
    ``G -> 0`` limit is exact with no branch.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    A, B = np.broadcast_arrays(A, B)
    aa = np.abs(A) ** 2
    bb = np.abs(B) ** 2
    G = np.sqrt(aa + bb)
    c = -0.5 * np.sinc(G / (2 * np.pi)) ** 2  # (cos G - 1) / G^2
    s = np.sinc(G / np.pi)  # sin G / G
    Ac, Bc = np.conj(A), np.conj(B)

    u = np.empty(A.shape + (3, 3), dtype=complex)
    u[..., 0, 0] = 1 + bb * c
    u[..., 0, 1] = -1j * B * s
    u[..., 0, 2] = B * A * c
    u[..., 1, 0] = -1j * Bc * s
    u[..., 1, 1] = 1 + (aa + bb) * c
    u[..., 1, 2] = -1j * A * s
    u[..., 2, 0] = Ac * Bc * c
    u[..., 2, 1] = -1j * Ac * s
    u[..., 2, 2] = 1 + aa * c
    return u


def semiclassical_unitary(gen: SemiclassicalGenerator) -> np.ndarray:
    return closed_form_exp(gen.A, gen.B)


def semiclassical_amplitudes(
    config, params: SystemParams, alpha: complex, beta: complex, t: float
) -> SemiclassicalGenerator:
    """Effective (A, B) with the mode operators replaced by coherent amplitudes.

    L:      A = g_a t alpha,    B = e^{-i dphi} g_b t beta
    lambda: A = g_a t alpha,    B = -e^{-i dphi} g_b t conj(beta)
    V:      A = -g_a t conj(alpha), B = e^{-i dphi} g_b t beta
    """
    config = Configuration.parse(config)
    ph = np.exp(-1j * params.delta_phi)
    if config is Configuration.LADDER:
        A = params.g_a * t * alpha
        B = ph * params.g_b * t * beta
    elif config is Configuration.LAMBDA:
        A = params.g_a * t * alpha
        B = -ph * params.g_b * t * np.conj(beta)
    else:
        A = -params.g_a * t * np.conj(alpha)
        B = ph * params.g_b * t * beta
    return SemiclassicalGenerator(complex(A), complex(B))


def semiclassical_from_params(
    config, params: SystemParams, alpha: complex, beta: complex, t: float
) -> np.ndarray:
    return semiclassical_unitary(semiclassical_amplitudes(config, params, alpha, beta, t))


def semiclassical_parts(gen: SemiclassicalGenerator):
    """Split ``U = P0 + cos(G) P1 + sin(G) P2`` into its three constant matrices.

    Returns ``(P0, P1, P2, G)``.  ``G`` must be nonzero.
    """
    G = gen.G
    if G == 0.0:
        raise ValueError("decomposition is undefined at G = 0")
    m = gen.matrix()
    m2 = m @ m / G**2
    return np.eye(3) - m2, m2, -1j * m / G, G


@dataclass(frozen=True)
class BlockIndex:
    """Label of one dressed block: the ``|e>`` leg is ``|e, n_a, n_b>``.

    Photon numbers may be -1 for the edge blocks that close the partition of
    the Fock space; legs with a negative photon number simply do not exist
    and their couplings vanish.
    """

    config: Configuration
    n_a: int
    n_b: int

    def __post_init__(self):
        object.__setattr__(self, "config", Configuration.parse(self.config))
        if self.n_a < -1 or self.n_b < -1:
            raise ValueError(f"block photon labels must be >= -1, got ({self.n_a}, {self.n_b})")

    def photon_factors(self) -> tuple[int, int]:
        """Squared matrix elements ``(f_a, f_b)`` of a and b along the block links."""
        legs = block_legs(self)
        (_, _, nb_e), (_, na_i, nb_i), (_, na_g, _) = legs
        f_a = max(na_i, na_g)
        f_b = max(nb_e, nb_i)
        return max(f_a, 0), max(f_b, 0)

    def rabi_frequency(self, params: SystemParams) -> float:
        """Generalized Rabi frequency ``lambda`` of the block.

        L: sqrt(g_a^2 (n_a+1) + g_b^2 (n_b+1)); lambda: sqrt(g_a^2 (n_a+1) +
        g_b^2 n_b); V: sqrt(g_a^2 n_a + g_b^2 (n_b+1)).
        """
        f_a, f_b = self.photon_factors()
        return float(np.sqrt(params.g_a**2 * f_a + params.g_b**2 * f_b))


def block_legs(block: BlockIndex):
    """``(level, n_a, n_b)`` for the e, i and g legs, possibly with negative n."""
    return tuple(
        (level, block.n_a + da, block.n_b + db)
        for level, (da, db) in zip("eig", block.config.leg_shifts)
    )


def block_indices(block: BlockIndex, trunc: FockTruncation) -> list[int]:
    """Joint-space indices of the three legs; every leg must lie inside ``trunc``."""
    out = []
    for level, na, nb in block_legs(block):
        if not trunc.contains(na, nb):
            raise IndexError(
                f"leg |{level}, {na}, {nb}> of block ({block.n_a}, {block.n_b}) "
                f"is outside the truncation ({trunc.cutoff_a}, {trunc.cutoff_b})"
            )
        out.append(joint_index(level, na, nb, trunc))
    return out


def block_basis(block: BlockIndex, trunc: FockTruncation) -> list[np.ndarray]:
    block_indices(block, trunc)
    return [joint_ket(level, na, nb, trunc) for level, na, nb in block_legs(block)]


def block_couplings(block: BlockIndex, params: SystemParams, t: float = 1.0):
    """Generator amplitudes ``(A, B)`` of the block for evolution time ``t``."""
    f_a, f_b = block.photon_factors()
    cfg = block.config
    A = cfg.sign_a * params.g_a * np.sqrt(f_a) * t
    B = cfg.sign_b * params.g_b * np.exp(-1j * params.delta_phi) * np.sqrt(f_b) * t
    return complex(A), complex(B)


def block_hamiltonian(block: BlockIndex, params: SystemParams) -> np.ndarray:
    A, B = block_couplings(block, params)
    return SemiclassicalGenerator(A, B).matrix()


def block_unitary(block: BlockIndex, params: SystemParams, t: float) -> np.ndarray:
    """``exp(-i H_block t)`` in the (e, i, g) leg basis of ``block``."""
    A, B = block_couplings(block, params, t)
    return closed_form_exp(A, B)


def restrict(op: np.ndarray, block: BlockIndex, trunc: FockTruncation) -> np.ndarray:
    """Matrix of a joint-space operator between the legs of ``block``."""
    idx = block_indices(block, trunc)
    return np.asarray(op)[np.ix_(idx, idx)]


def joint_block_hamiltonian(block: BlockIndex, params: SystemParams, trunc: FockTruncation):
    return restrict(h_rwa_resonant(block.config, params, trunc), block, trunc)
