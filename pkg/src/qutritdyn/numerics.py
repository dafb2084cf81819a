"""Dense complex linear algebra kernel and reference propagators.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
functions here are the independent ground truth used to check every closed
form in the package: a Hermitian matrix exponential built from an
eigendecomposition, and a fixed-step fourth-order Runge-Kutta integrator for
``i dpsi/dt = H(t) psi`` (hbar = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "UNITARITY_TOL",
    "ORACLE_TOL",
    "ODE_TOL",
    "HERMITIAN_TOL",
    "DimensionError",
    "NonHermitianError",
    "NonFiniteError",
    "HermitianCheck",
    "as_matrix",
    "hermitian_check",
    "unitarity_deviation",
    "max_abs_diff",
    "allclose_max",
    "matmul",
    "kron",
    "expm_unitary",
    "HermitianPropagator",
    "integrate_schrodinger",
    "integrate_schrodinger_matvec",
]

UNITARITY_TOL = 1e-10
ORACLE_TOL = 1e-9
ODE_TOL = 1e-8
HERMITIAN_TOL = 1e-10


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class NonHermitianError(ValueError):
    """A generator expected to be Hermitian is not.

    Attributes
    ----------
    max_deviation : float
        Largest ``|M[j, k] - conj(M[k, j])|`` of the offending matrix.
    """

    def __init__(self, max_deviation: float, tol: float = HERMITIAN_TOL):
        self.max_deviation = float(max_deviation)
        self.tol = tol
        super().__init__(
            f"matrix is not Hermitian: max deviation {self.max_deviation:.3e} > {tol:.1e}"
        )


class NonFiniteError(FloatingPointError):
    """The integrator produced a NaN or infinite amplitude."""


@dataclass(frozen=True)
class HermitianCheck:
    max_deviation: float

    def ok(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.max_deviation <= tol


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def hermitian_check(m) -> HermitianCheck:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"Hermiticity needs a square matrix, got {a.shape}")
    if a.size == 0:
        return HermitianCheck(0.0)
    return HermitianCheck(float(np.max(np.abs(a - a.conj().T))))


def unitarity_deviation(u) -> float:
    """Max-entry norm of ``U^dagger U - I``."""
    a = as_matrix(u)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"unitarity needs a square matrix, got {a.shape}")
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def max_abs_diff(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def allclose_max(a, b, tol: float) -> bool:
    """Element-wise equality within ``tol`` in the max-entry norm."""
    return max_abs_diff(a, b) <= tol


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product, ``out[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


class HermitianPropagator:
    """``exp(-i H t)`` for a fixed Hermitian ``H`` and any number of times.

    The eigendecomposition is done once; each call to :meth:`unitary` costs
    one matrix product.  Use :meth:`columns` when only a few columns of the
    propagator are needed (e.g. the image of a small invariant subspace).
    """

    def __init__(self, h, tol: float = HERMITIAN_TOL):
        h = as_matrix(h)
        check = hermitian_check(h)
        if not check.ok(tol):
            raise NonHermitianError(check.max_deviation, tol)
        # symmetrize so eigh sees exactly what we checked
        h = 0.5 * (h + h.conj().T)
        self.dim = h.shape[0]
        self.energies, self.vectors = np.linalg.eigh(h)

    def unitary(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.energies * t)
        return (self.vectors * phases) @ self.vectors.conj().T

    def columns(self, t: float, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=int)
        phases = np.exp(-1j * self.energies * t)
        return (self.vectors * phases) @ self.vectors[idx].conj().T

    def apply(self, t: float, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex)
        phases = np.exp(-1j * self.energies * t)
        return self.vectors @ (phases * (self.vectors.conj().T @ psi))


def expm_unitary(h, t: float, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``exp(-i h t)`` for Hermitian ``h`` via eigendecomposition.

    Raises
    ------
    NonHermitianError
        If ``h`` deviates from Hermitian by more than ``tol``.
    """
    return HermitianPropagator(h, tol).unitary(t)


def integrate_schrodinger(
    h_of_t: Callable[[float], np.ndarray],
    psi0,
    t_end: float,
    steps: int,
    t_start: float = 0.0,
    norm_tol: float = 1e-12,
) -> np.ndarray:
    """Fixed-step RK4 solution of ``i dpsi/dt = H(t) psi`` from ``t_start``.

    Parameters
    ----------
    h_of_t : callable
        Returns the Hermitian generator at time ``t`` as a square matrix.
    psi0 : array_like
        Initial state; must be normalized within ``norm_tol``.
    t_end : float
        Final time.
    steps : int
        Number of equal steps, at least 2.

    Returns
    -------
    psi : ndarray
        State at ``t_end``.
    """
    return integrate_schrodinger_matvec(
        lambda t, y: h_of_t(t) @ y, psi0, t_end, steps, t_start=t_start, norm_tol=norm_tol
    )


def integrate_schrodinger_matvec(
    apply_h: Callable[[float, np.ndarray], np.ndarray],
    psi0,
    t_end: float,
    steps: int,
    t_start: float = 0.0,
    norm_tol: float = 1e-12,
) -> np.ndarray:
    """Matrix-free form of :func:`integrate_schrodinger`; ``apply_h(t, psi)`` returns ``H(t) psi``."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    psi = np.array(psi0, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > norm_tol:
        raise ValueError(f"psi0 is not normalized (norm {np.linalg.norm(psi)!r})")
    h = (t_end - t_start) / steps
    if h == 0.0:
        return psi

    def rhs(t, y):
        return -1j * apply_h(t, y)

    # overflow is detected below, so numpy's own warnings are redundant
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            t = t_start + k * h
            k1 = rhs(t, psi)
            k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1)
            k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2)
            k4 = rhs(t + h, psi + h * k3)
            psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(psi)):
                raise NonFiniteError(f"non-finite amplitude at t={t + h!r}")
    return psi
