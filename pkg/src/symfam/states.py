"""Symmetric multiqubit states in the Dicke basis.

A pure symmetric state of N qubits is stored as its N+1 complex amplitudes
c_0..c_N over the Dicke states |D_N^(k)> (k excitations).  Mixed states live
on the same (N+1)-dimensional subspace as Hermitian, positive semidefinite,
trace-one matrices.  A constellation is the equivalent point-multiset picture
on the Bloch sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import (
    DomainError,
    as_amplitude_vector,
    as_density_entries,
    check_n_qubits,
    check_normalized,
    check_same_n,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SymmetricState:
    """Normalized pure symmetric state: amplitudes c_0..c_N in the Dicke basis."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = check_n_qubits(self.n_qubits)
        amps = as_amplitude_vector(self.amplitudes, n)
        check_normalized(amps)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True, order=True)
class BlochPoint:
    """Point on the Bloch sphere, theta in [0, pi], phi in [0, 2*pi).

    Encodes the single-qubit state cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
    phi is reduced modulo 2*pi and forced to 0 at the poles, where it is
    meaningless.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (0.0 <= theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
        if not math.isfinite(phi):
            raise DomainError(f"phi must be finite, got {phi!r}")
        phi = phi % TWO_PI
        if theta == 0.0 or theta == math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector in R^3."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    def spinor(self) -> tuple[complex, complex]:
        """Amplitude pair (alpha, beta) of the encoded qubit state."""
        if self.theta == math.pi:
            return (0.0 + 0.0j, 1.0 + 0.0j)
        half = self.theta / 2.0
        return (
            complex(math.cos(half)),
            math.sin(half) * complex(math.cos(self.phi), math.sin(self.phi)),
        )


def bloch_point_from_vector(v) -> BlochPoint:
    """Inverse of :meth:`BlochPoint.unit_vector` (input need not be normalized)."""
    x, y, z = (float(c) for c in v)
    theta = math.atan2(math.hypot(x, y), z)
    phi = math.atan2(y, x)
    return BlochPoint(theta, phi)


def chordal_distance(a: BlochPoint, b: BlochPoint) -> float:
    """Straight-line distance in R^3 between two Bloch-sphere points."""
    return float(np.linalg.norm(a.unit_vector() - b.unit_vector()))


@dataclass(frozen=True)
class Constellation:
    """Multiset of Bloch points with multiplicities summing to n_qubits."""

    n_qubits: int
    points: tuple[tuple[BlochPoint, int], ...]

    def __post_init__(self):
        n = check_n_qubits(self.n_qubits)
        pts = tuple((p, int(m)) for p, m in self.points)
        if any(m < 1 for _, m in pts):
            raise DomainError("multiplicities must be positive")
        total = sum(m for _, m in pts)
        if total != n:
            raise DomainError(f"multiplicities sum to {total}, expected {n}")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if chordal_distance(pts[i][0], pts[j][0]) == 0.0:
                    raise DomainError("constellation contains coincident points")
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "points", pts)

    def multiplicity_pattern(self) -> tuple[int, ...]:
        """Multiplicities sorted non-increasing."""
        return tuple(sorted((m for _, m in self.points), reverse=True))


@dataclass(frozen=True)
class SymmetricDensityMatrix:
    """Hermitian PSD trace-one operator on the symmetric subspace."""

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self):
        n = check_n_qubits(self.n_qubits)
        mat = as_density_entries(self.entries, n)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "entries", mat)


def dicke(n_qubits: int, k: int) -> SymmetricState:
    """The Dicke state with k excitations: c_k = 1, all other amplitudes 0."""
    n = check_n_qubits(n_qubits)
    if not isinstance(k, (int, np.integer)) or not 0 <= k <= n:
        raise DomainError(f"k must lie in 0..{n}, got {k!r}")
    amps = np.zeros(n + 1, dtype=complex)
    amps[int(k)] = 1.0
    return SymmetricState(n, amps)


def ghz(n_qubits: int) -> SymmetricState:
    """(|D_N^(0)> + |D_N^(N)>)/sqrt(2)."""
    n = check_n_qubits(n_qubits)
    if n < 2:
        raise DomainError("GHZ requires at least 2 qubits")
    amps = np.zeros(n + 1, dtype=complex)
    amps[0] = amps[n] = 1.0 / math.sqrt(2.0)
    return SymmetricState(n, amps)


def tetrahedron_state() -> SymmetricState:
    """The 4-qubit state whose Majorana points form a regular tetrahedron."""
    amps = np.zeros(5, dtype=complex)
    amps[0] = 1.0 / math.sqrt(3.0)
    amps[3] = math.sqrt(2.0 / 3.0)
    return SymmetricState(4, amps)


def overlap(a: SymmetricState, b: SymmetricState) -> complex:
    """Inner product <a|b> = sum_k conj(a_k) b_k."""
    check_same_n(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def projector(s: SymmetricState) -> SymmetricDensityMatrix:
    """Rank-one density matrix |s><s|."""
    mat = np.outer(s.amplitudes, s.amplitudes.conj())
    return SymmetricDensityMatrix(s.n_qubits, mat)


def mix(terms) -> SymmetricDensityMatrix:
    """Convex combination sum_i w_i rho_i of density matrices.

    Weights must be nonnegative and sum to 1 within 1e-10; all terms must
    share the same qubit count.
    """
    terms = list(terms)
    if not terms:
        raise DomainError("mix requires at least one term")
    weights = np.array([float(w) for w, _ in terms])
    if np.any(weights < 0):
        raise DomainError("mixture weights must be nonnegative")
    if abs(weights.sum() - 1.0) > 1e-10:
        raise DomainError(f"mixture weights sum to {weights.sum()!r}, expected 1")
    n = terms[0][1].n_qubits
    for _, rho in terms[1:]:
        if rho.n_qubits != n:
            raise DomainError("all mixture terms must have the same n_qubits")
    total = np.zeros((n + 1, n + 1), dtype=complex)
    for w, rho in terms:
        total += w * rho.entries
    # guard against accumulated roundoff in the constructor checks
    total = 0.5 * (total + total.conj().T)
    total /= np.trace(total).real
    return SymmetricDensityMatrix(n, total)


def maximally_mixed(n_qubits: int) -> SymmetricDensityMatrix:
    """Identity/(N+1) on the symmetric subspace."""
    n = check_n_qubits(n_qubits)
    return SymmetricDensityMatrix(n, np.eye(n + 1, dtype=complex) / (n + 1))


def trace_distance(a: SymmetricDensityMatrix, b: SymmetricDensityMatrix) -> float:
    """Half the sum of singular values of a - b."""
    check_same_n(a, b)
    diff = a.entries - b.entries
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
