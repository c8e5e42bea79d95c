"""Separable operator bases for the symmetric subspace.

The (N+1)^2 Hermitian operators

    |D_k><D_k|,   |D_k><D_j| + |D_j><D_k|,   i(|D_k><D_j| - |D_j><D_k|)

span the real space of Hermitian operators on the symmetric subspace.  A
symmetric product projector expands over them with coefficients f(theta, phi)
that are trigonometric monomials, and stacking those coefficient vectors for
(N+1)^2 directions gives a square matrix F.  For generic directions F is
nonsingular, so the product projectors themselves form a (non-orthogonal)
basis: every trace-one symmetric operator, in particular every symmetric
mixed state, decomposes uniquely over them with coefficients summing to one.
Directions are found by rejection sampling on the condition number of F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from ._validation import (
    ConditioningError,
    DomainError,
    check_n_qubits,
)
from .states import BlochPoint, SymmetricDensityMatrix

KINDS = ("diagonal", "real_offdiag", "imag_offdiag")

# build_basis refuses matrices worse than this outright; choose_points
# applies its own, configurable acceptance threshold
SINGULARITY_LIMIT = 1e12

ROW_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class OperatorIndex:
    """Position in the frozen operator ordering: diagonals, then real
    off-diagonals in lexicographic (k, j), then imaginary ones."""

    kind: str
    k: int
    j: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown operator kind {self.kind!r}")
        if self.kind == "diagonal":
            if self.j is not None:
                raise DomainError("diagonal operators carry no second index")
        else:
            if self.j is None or not self.k < self.j:
                raise DomainError("off-diagonal operators require k < j")
        if self.k < 0:
            raise DomainError("indices must be nonnegative")


@lru_cache(maxsize=32)
def operator_indices(n_qubits: int) -> tuple[OperatorIndex, ...]:
    """All (N+1)^2 operator indices in the frozen order."""
    n = check_n_qubits(n_qubits)
    out = [OperatorIndex("diagonal", k) for k in range(n + 1)]
    pairs = [(k, j) for k in range(n + 1) for j in range(k + 1, n + 1)]
    out.extend(OperatorIndex("real_offdiag", k, j) for k, j in pairs)
    out.extend(OperatorIndex("imag_offdiag", k, j) for k, j in pairs)
    return tuple(out)


def sigma_matrix(n_qubits: int, idx: OperatorIndex) -> np.ndarray:
    """The Hermitian basis operator for one index, in the Dicke basis."""
    n = check_n_qubits(n_qubits)
    if idx.k > n or (idx.j is not None and idx.j > n):
        raise DomainError(f"index {idx} out of range for n_qubits={n}")
    mat = np.zeros((n + 1, n + 1), dtype=complex)
    if idx.kind == "diagonal":
        mat[idx.k, idx.k] = 1.0
    elif idx.kind == "real_offdiag":
        mat[idx.k, idx.j] = 1.0
        mat[idx.j, idx.k] = 1.0
    else:
        mat[idx.k, idx.j] = 1.0j
        mat[idx.j, idx.k] = -1.0j
    return mat


def _direction_amplitudes(n: int, point: BlochPoint) -> np.ndarray:
    alpha, beta = point.spinor()
    k = np.arange(n + 1)
    sqrtc = np.array([math.sqrt(math.comb(n, int(i))) for i in k])
    return sqrtc * alpha ** (n - k) * beta**k


def direction_projector(n_qubits: int, point: BlochPoint) -> np.ndarray:
    """The product projector of one direction, restricted to the symmetric subspace."""
    amps = _direction_amplitudes(check_n_qubits(n_qubits), point)
    return np.outer(amps, amps.conj())


def f_coeffs(n_qubits: int, point: BlochPoint) -> np.ndarray:
    """Expansion coefficients of a direction's projector over the operator basis."""
    n = check_n_qubits(n_qubits)
    amps = _direction_amplitudes(n, point)
    g = np.outer(amps, amps.conj())
    out = [g[k, k].real for k in range(n + 1)]
    pairs = [(k, j) for k in range(n + 1) for j in range(k + 1, n + 1)]
    out.extend(g[k, j].real for k, j in pairs)
    out.extend(g[k, j].imag for k, j in pairs)
    return np.array(out)


def hermitian_coordinates(n_qubits: int, matrix: np.ndarray) -> np.ndarray:
    """Real coordinates of a Hermitian matrix in the frozen operator order."""
    n = check_n_qubits(n_qubits)
    out = [matrix[k, k].real for k in range(n + 1)]
    pairs = [(k, j) for k in range(n + 1) for j in range(k + 1, n + 1)]
    out.extend(matrix[k, j].real for k, j in pairs)
    out.extend(matrix[k, j].imag for k, j in pairs)
    return np.array(out)


@dataclass(frozen=True)
class SeparableBasis:
    """(N+1)^2 product projectors whose coefficient matrix F is invertible."""

    n_qubits: int
    directions: tuple[BlochPoint, ...]
    F: np.ndarray
    condition_number: float
    _lu: tuple = field(repr=False, default=None)
    _projectors: np.ndarray = field(repr=False, default=None)


def build_basis(n_qubits: int, points) -> SeparableBasis:
    """Assemble and validate the basis for the given directions."""
    n = check_n_qubits(n_qubits)
    directions = tuple(points)
    dim = (n + 1) ** 2
    if len(directions) != dim:
        raise DomainError(f"expected {dim} directions for n_qubits={n}, got {len(directions)}")

    F = np.array([f_coeffs(n, p) for p in directions])
    cond = float(np.linalg.cond(F))
    if not np.isfinite(cond) or cond > SINGULARITY_LIMIT:
        raise DomainError(f"F matrix is numerically singular (condition {cond:.3e})")

    projectors = np.array([direction_projector(n, p) for p in directions])
    sigmas = np.array([sigma_matrix(n, idx) for idx in operator_indices(n)])
    rebuilt = np.tensordot(F, sigmas, axes=(1, 0))
    defect = float(np.max(np.abs(rebuilt - projectors)))
    if defect > ROW_CHECK_TOL:
        raise DomainError(
            f"F rows do not reproduce the direction projectors (defect {defect:.3e})"
        )

    lu = lu_factor(F)
    return SeparableBasis(n, directions, F, cond, lu, projectors)


def choose_points(
    n_qubits: int,
    seed: int = 0,
    cond_threshold: float = 1e8,
    max_attempts: int = 50,
) -> list[BlochPoint]:
    """Rejection-sample direction sets until F is acceptably conditioned."""
    n = check_n_qubits(n_qubits)
    if not cond_threshold > 1.0:
        raise DomainError("cond_threshold must exceed 1")
    if max_attempts < 1:
        raise DomainError("max_attempts must be positive")
    dim = (n + 1) ** 2
    best = math.inf
    for attempt in range(max_attempts):
        rng = np.random.Generator(np.random.Philox(key=[seed, attempt]))
        cos_t = rng.uniform(-1.0, 1.0, dim)
        phis = rng.uniform(0.0, 2.0 * math.pi, dim)
        pts = [BlochPoint(math.acos(c), p) for c, p in zip(cos_t, phis)]
        F = np.array([f_coeffs(n, p) for p in pts])
        cond = float(np.linalg.cond(F))
        if cond < cond_threshold:
            return pts
        best = min(best, cond)
    raise ConditioningError(
        f"no direction set reached condition {cond_threshold:.1e} "
        f"in {max_attempts} attempts (best {best:.3e})",
        best,
    )


def decompose(rho: SymmetricDensityMatrix, basis: SeparableBasis) -> np.ndarray:
    """Unique affine coefficients x with rho = sum_i x_i P_i, sum x_i = 1.

    Coefficients may be negative: the expansion is affine, not convex.
    """
    if rho.n_qubits != basis.n_qubits:
        raise DomainError(
            f"qubit counts differ: state {rho.n_qubits}, basis {basis.n_qubits}"
        )
    r = hermitian_coordinates(basis.n_qubits, rho.entries)
    # rho = sum_i x_i P_i  <=>  F^T x = r
    return lu_solve(basis._lu, r, trans=1)


def reconstruct(coeffs, basis: SeparableBasis) -> np.ndarray:
    """sum_i x_i P_i as a raw matrix (a state only if the input was one)."""
    x = np.asarray(coeffs, dtype=float).reshape(-1)
    dim = (basis.n_qubits + 1) ** 2
    if x.size != dim:
        raise DomainError(f"expected {dim} coefficients, got {x.size}")
    return np.tensordot(x, basis._projectors, axes=(0, 0))


def guaranteed_ball_radius(basis: SeparableBasis) -> float:
    """Frobenius radius around the barycenter provably inside the convex hull.

    A perturbation of Frobenius norm t shifts the affine coefficients by at
    most t / sigma_min(F); the barycenter sits at uniform coefficients
    1/(N+1)^2, so positivity survives any perturbation below that margin.
    """
    smin = float(np.linalg.svd(basis.F, compute_uv=False)[-1])
    return smin / (basis.n_qubits + 1) ** 2
