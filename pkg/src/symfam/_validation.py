"""Shared input validation helpers and error types."""

from __future__ import annotations

import numpy as np

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
TRACE_TOL = 1e-12


class DomainError(ValueError):
    """Invalid input: out of range, mismatched sizes, broken invariants."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to reach its accuracy or success target."""


class ConditioningError(NumericalError):
    """Rejection sampling exhausted its attempts without an acceptable matrix.

    Carries ``best_condition``, the smallest condition number seen.
    """

    def __init__(self, message, best_condition):
        super().__init__(message)
        self.best_condition = float(best_condition)


def check_n_qubits(n) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"n_qubits must be a positive integer, got {n!r}")
    return int(n)


def as_amplitude_vector(amplitudes, n_qubits=None) -> np.ndarray:
    """Coerce to a complex vector of length N+1 and return it (read-only)."""
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if n_qubits is not None and amps.size != n_qubits + 1:
        raise DomainError(
            f"expected {n_qubits + 1} amplitudes for n_qubits={n_qubits}, got {amps.size}"
        )
    if amps.size < 2:
        raise DomainError("amplitude vector must have length N+1 with N >= 1")
    if not np.all(np.isfinite(amps.view(float))):
        raise DomainError("amplitudes must be finite")
    amps.setflags(write=False)
    return amps


def check_normalized(amplitudes, tol=NORM_TOL) -> None:
    norm_sq = float(np.sum(np.abs(amplitudes) ** 2))
    if abs(norm_sq - 1.0) > tol:
        raise DomainError(f"state is not normalized: sum |c_k|^2 = {norm_sq!r}")


def as_density_entries(entries, n_qubits=None) -> np.ndarray:
    """Coerce to a square complex matrix, checking Hermiticity, positivity, trace."""
    mat = np.asarray(entries, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError(f"density matrix must be square, got shape {mat.shape}")
    if n_qubits is not None and mat.shape[0] != n_qubits + 1:
        raise DomainError(
            f"expected a {n_qubits + 1}x{n_qubits + 1} matrix for n_qubits={n_qubits}"
        )
    if mat.shape[0] < 2:
        raise DomainError("density matrix must be at least 2x2 (N >= 1)")
    if not np.all(np.isfinite(mat.view(float))):
        raise DomainError("density matrix entries must be finite")
    herm_defect = float(np.max(np.abs(mat - mat.conj().T)))
    if herm_defect > HERMITICITY_TOL:
        raise DomainError(f"matrix is not Hermitian (max defect {herm_defect:.3e})")
    trace = complex(np.trace(mat))
    if abs(trace - 1.0) > TRACE_TOL:
        raise DomainError(f"matrix trace is {trace!r}, expected 1")
    lo = float(np.linalg.eigvalsh(mat).min())
    if lo < EIGENVALUE_FLOOR:
        raise DomainError(f"matrix has negative eigenvalue {lo:.3e}")
    mat = mat.copy()
    mat.setflags(write=False)
    return mat


def check_same_n(a, b) -> None:
    if a.n_qubits != b.n_qubits:
        raise DomainError(
            f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}"
        )


def as_seed(seed) -> int:
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    return int(seed)
