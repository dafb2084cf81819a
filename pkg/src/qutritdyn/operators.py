"""Atomic transition operators, truncated mode operators and their embedding.

Atomic basis order is fixed repo-wide::

    |e> -> index 0,  |i> -> index 1,  |g> -> index 2

and the joint atom-field space is ``|level> (x) |n_a> (x) |n_b>`` with the
row-major Kronecker convention of :func:`qutritdyn.numerics.kron`, so the
joint index of ``|level, n_a, n_b>`` is ``level * N_a * N_b + n_a * N_b + n_b``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DimensionError, kron

__all__ = [
    "LEVELS",
    "DEFAULT_CUTOFF",
    "FockTruncation",
    "level_index",
    "atomic_ket",
    "sigma",
    "ket_bra",
    "annihilator",
    "creator",
    "number_operator",
    "embed",
    "joint_index",
    "joint_ket",
    "dipole_operator",
]

LEVELS = ("e", "i", "g")
DEFAULT_CUTOFF = 24


@dataclass(frozen=True)
class FockTruncation:
    """Fock states ``0 .. cutoff - 1`` are kept for each mode."""

    cutoff_a: int = DEFAULT_CUTOFF
    cutoff_b: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if self.cutoff_a < 1 or self.cutoff_b < 1:
            raise ValueError(f"cutoffs must be >= 1, got {self.cutoff_a}, {self.cutoff_b}")

    @property
    def dim(self) -> int:
        return 3 * self.cutoff_a * self.cutoff_b

    def contains(self, n_a: int, n_b: int) -> bool:
        return 0 <= n_a < self.cutoff_a and 0 <= n_b < self.cutoff_b


def level_index(level) -> int:
    if isinstance(level, (int, np.integer)):
        if 0 <= level < 3:
            return int(level)
    elif level in LEVELS:
        return LEVELS.index(level)
    raise ValueError(f"unknown atomic level {level!r}; expected one of {LEVELS}")


def atomic_ket(level) -> np.ndarray:
    ket = np.zeros(3, dtype=complex)
    ket[level_index(level)] = 1.0
    return ket


def sigma(from_level, to_level) -> np.ndarray:
    """Return ``|to><from|``; with ``from == to`` this is a projector.

    Note the argument order: ``sigma("g", "i")`` is the operator usually
    written sigma_ig, which raises the atom from ``|g>`` to ``|i>``.
    """
    out = np.zeros((3, 3), dtype=complex)
    out[level_index(to_level), level_index(from_level)] = 1.0
    return out


def ket_bra(to_level, from_level) -> np.ndarray:
    """``|to><from|`` with the arguments in the order they are written."""
    return sigma(from_level, to_level)


def annihilator(cutoff: int) -> np.ndarray:
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)


def creator(cutoff: int) -> np.ndarray:
    return annihilator(cutoff).conj().T


def number_operator(cutoff: int) -> np.ndarray:
    return np.diag(np.arange(cutoff, dtype=float)).astype(complex)


def embed(atom_op, mode_a_op, mode_b_op, trunc: FockTruncation) -> np.ndarray:
    """``atom_op (x) mode_a_op (x) mode_b_op`` on the joint space."""
    atom_op = np.asarray(atom_op, dtype=complex)
    mode_a_op = np.asarray(mode_a_op, dtype=complex)
    mode_b_op = np.asarray(mode_b_op, dtype=complex)
    expected = ((3, 3), (trunc.cutoff_a,) * 2, (trunc.cutoff_b,) * 2)
    got = (atom_op.shape, mode_a_op.shape, mode_b_op.shape)
    if got != expected:
        raise DimensionError(f"embed expects shapes {expected}, got {got}")
    return kron(atom_op, kron(mode_a_op, mode_b_op))


def joint_index(level, n_a: int, n_b: int, trunc: FockTruncation) -> int:
    if not trunc.contains(n_a, n_b):
        raise IndexError(
            f"photon numbers ({n_a}, {n_b}) outside truncation "
            f"({trunc.cutoff_a}, {trunc.cutoff_b})"
        )
    return (level_index(level) * trunc.cutoff_a + n_a) * trunc.cutoff_b + n_b


def joint_ket(level, n_a: int, n_b: int, trunc: FockTruncation) -> np.ndarray:
    ket = np.zeros(trunc.dim, dtype=complex)
    ket[joint_index(level, n_a, n_b, trunc)] = 1.0
    return ket


def dipole_operator(wp_ig: complex, wp_ei: complex) -> np.ndarray:
    """Dipole operator with only the i-g and e-i transitions allowed.

    ``wp_ig = <i|d|g>`` and ``wp_ei = <e|d|i>``; the reverse elements are the
    complex conjugates, and the direct e-g element is zero.
    """
    return (
        wp_ig * sigma("g", "i")
        + np.conj(wp_ig) * sigma("i", "g")
        + wp_ei * sigma("i", "e")
        + np.conj(wp_ei) * sigma("e", "i")
    )
