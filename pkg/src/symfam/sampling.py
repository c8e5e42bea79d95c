"""Constructive sampling of pure and mixed states inside a family.

A pure state of family D is generated by drawing diversity(D) orientations
from a chosen distribution on the sphere and attaching D's multiplicities,
mirroring a preparation where groups of identical polarizer orientations fix
the state.  Mixed members arise as convex sums over such draws, optionally
ranging over the family's descendants, which by construction stay inside the
corresponding compact convex mixed-state family.

Randomness is counter-based (Philox), keyed by the user seed plus a draw or
chunk index, so identical seeds reproduce identical states bitwise and the
aggregate does not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, NumericalError, as_seed
from .families import canonical_partition, closure
from .majorana import from_constellation
from .states import (
    BlochPoint,
    Constellation,
    SymmetricDensityMatrix,
    SymmetricState,
    bloch_point_from_vector,
    chordal_distance,
)

MIN_POINT_SEPARATION = 1e-6
MAX_REDRAWS = 1000
MC_CHUNK = 4096


@dataclass(frozen=True)
class UniformSphere:
    """Uniform area measure on the Bloch sphere."""

    def draw(self, rng, size: int) -> list[BlochPoint]:
        cos_t = rng.uniform(-1.0, 1.0, size)
        phis = rng.uniform(0.0, 2.0 * math.pi, size)
        return [BlochPoint(math.acos(c), p) for c, p in zip(cos_t, phis)]


@dataclass(frozen=True)
class SphericalCap:
    """Uniform measure on the cap of given angular radius around a center."""

    center: BlochPoint
    angular_radius: float

    def __post_init__(self):
        if not 0.0 < self.angular_radius <= math.pi:
            raise DomainError(
                f"angular_radius must lie in (0, pi], got {self.angular_radius!r}"
            )

    def draw(self, rng, size: int) -> list[BlochPoint]:
        cos_t = rng.uniform(math.cos(self.angular_radius), 1.0, size)
        phis = rng.uniform(0.0, 2.0 * math.pi, size)
        rot = _rotation_to(self.center)
        out = []
        for c, p in zip(cos_t, phis):
            st = math.sqrt(max(0.0, 1.0 - c * c))
            v = rot @ np.array([st * math.cos(p), st * math.sin(p), c])
            out.append(bloch_point_from_vector(v))
        return out


def _rotation_to(center: BlochPoint) -> np.ndarray:
    """Rotation taking +z to the cap center."""
    t, p = center.theta, center.phi
    about_y = np.array(
        [
            [math.cos(t), 0.0, math.sin(t)],
            [0.0, 1.0, 0.0],
            [-math.sin(t), 0.0, math.cos(t)],
        ]
    )
    about_z = np.array(
        [
            [math.cos(p), -math.sin(p), 0.0],
            [math.sin(p), math.cos(p), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    return about_z @ about_y


@dataclass(frozen=True)
class SamplingSpec:
    """How to draw one mixed state: family, mixture size, orientation law."""

    family: tuple
    n_terms: int
    include_descendants: bool = False
    orientation_distribution: object = UniformSphere()
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", canonical_partition(self.family))
        if self.n_terms < 1:
            raise DomainError("n_terms must be positive")
        as_seed(self.seed)


def sample_constellation(family, dist, rng) -> Constellation:
    """Draw distinct points from dist and attach the family's multiplicities.

    The largest part goes to the first drawn point.  Points landing within
    chordal 1e-6 of an earlier one are redrawn so the degeneracy pattern is
    exactly the requested one.
    """
    parts = canonical_partition(family)
    accepted: list[BlochPoint] = []
    for _ in parts:
        for attempt in range(MAX_REDRAWS + 1):
            (candidate,) = dist.draw(rng, 1)
            if all(
                chordal_distance(candidate, q) >= MIN_POINT_SEPARATION
                for q in accepted
            ):
                accepted.append(candidate)
                break
        else:
            raise NumericalError(
                "orientation distribution too narrow to yield distinct points"
            )
    pairs = tuple(zip(accepted, parts))
    return Constellation(sum(parts), pairs)


def sample_pure_in_family(family, dist, rng) -> SymmetricState:
    """Pure state whose constellation realizes the family's pattern."""
    return from_constellation(sample_constellation(family, dist, rng))


def _term_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, index]))


def sample_mixed_in_family(spec: SamplingSpec, n_qubits: int) -> SymmetricDensityMatrix:
    """Convex sum of n_terms pure projectors drawn inside the family.

    With include_descendants, each term's family is chosen uniformly from the
    family's descendant closure; weights are uniform on the probability
    simplex (normalized exponentials).  Deterministic given spec.seed.
    """
    if sum(spec.family) != n_qubits:
        raise DomainError(
            f"family {spec.family} is not a partition of n_qubits={n_qubits}"
        )
    pool = closure(spec.family) if spec.include_descendants else [spec.family]

    weight_rng = _term_rng(spec.seed, 0)
    weights = weight_rng.standard_exponential(spec.n_terms)
    weights /= weights.sum()

    total = np.zeros((n_qubits + 1, n_qubits + 1), dtype=complex)
    for i in range(spec.n_terms):
        rng = _term_rng(spec.seed, i + 1)
        family = pool[int(rng.integers(len(pool)))]
        psi = sample_pure_in_family(family, spec.orientation_distribution, rng)
        total += weights[i] * np.outer(psi.amplitudes, psi.amplitudes.conj())
    total = 0.5 * (total + total.conj().T)
    total /= np.trace(total).real
    return SymmetricDensityMatrix(n_qubits, total)


def polarizer_mixture(family, dist, n_samples: int, seed: int = 0):
    """Monte Carlo average of projectors onto pure draws from the family.

    Returns (density_matrix, diagnostic) where the diagnostic is the trace
    distance between the first- and second-half partial averages (NaN when
    fewer than two samples).
    """
    parts = canonical_partition(family)
    if n_samples < 1:
        raise DomainError("n_samples must be positive")
    as_seed(seed)
    n = sum(parts)

    sums = np.zeros((2, n + 1, n + 1), dtype=complex)
    counts = [0, 0]
    half = n_samples // 2
    done = 0
    chunk_index = 0
    while done < n_samples:
        take = min(MC_CHUNK, n_samples - done)
        rng = _term_rng(seed, chunk_index)
        chunk_index += 1
        amps = _chunk_amplitudes(parts, dist, rng, take)
        # sample i of this chunk is global sample done + i
        split = max(0, min(take, half - done))
        for lo, hi, side in ((0, split, 0), (split, take, 1)):
            if hi > lo:
                block = amps[lo:hi]
                sums[side] += np.einsum("bi,bj->ij", block, block.conj())
                counts[side] += hi - lo
        done += take

    total = sums[0] + sums[1]
    total = 0.5 * (total + total.conj().T) / n_samples
    total /= np.trace(total).real
    rho = SymmetricDensityMatrix(n, total)

    if min(counts) == 0:
        return rho, float("nan")
    diff = sums[0] / counts[0] - sums[1] / counts[1]
    diff = 0.5 * (diff + diff.conj().T)
    diagnostic = 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
    return rho, diagnostic


def _chunk_amplitudes(parts, dist, rng, size: int) -> np.ndarray:
    """Normalized amplitude rows for `size` independent family draws."""
    d = len(parts)
    n = sum(parts)
    points = dist.draw(rng, size * d)
    thetas = np.array([p.theta for p in points]).reshape(size, d)
    phis = np.array([p.phi for p in points]).reshape(size, d)

    # redraw any draw whose points collide, preserving the pattern exactly
    for b in range(size):
        ok = False
        for _ in range(MAX_REDRAWS):
            pts = [BlochPoint(thetas[b, j], phis[b, j]) for j in range(d)]
            if all(
                chordal_distance(pts[i], pts[j]) >= MIN_POINT_SEPARATION
                for i in range(d)
                for j in range(i + 1, d)
            ):
                ok = True
                break
            fresh = dist.draw(rng, d)
            thetas[b] = [p.theta for p in fresh]
            phis[b] = [p.phi for p in fresh]
        if not ok:
            raise NumericalError(
                "orientation distribution too narrow to yield distinct points"
            )

    halves = thetas / 2.0
    a = np.cos(halves)
    b = np.sin(halves) * np.exp(1j * phis)
    coef = np.zeros((size, n + 1), dtype=complex)
    coef[:, 0] = 1.0
    deg = 0
    for j, m in enumerate(parts):
        i = np.arange(m + 1)
        combs = np.array([math.comb(m, int(t)) for t in i])
        factors = combs * a[:, j : j + 1] ** (m - i) * (-b[:, j : j + 1]) ** i
        new = np.zeros_like(coef)
        for t in range(m + 1):
            new[:, t : t + deg + 1] += factors[:, t : t + 1] * coef[:, : deg + 1]
        coef = new
        deg += m
    signs = np.where(np.arange(n + 1) % 2 == 0, 1.0, -1.0)
    sqrtc = np.array([math.sqrt(math.comb(n, k)) for k in range(n + 1)])
    amps = coef * signs / sqrtc
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    return amps


def random_symmetric_pure(n_qubits: int, seed: int = 0) -> SymmetricState:
    """Unitarily invariant random pure state on the symmetric subspace."""
    if n_qubits < 1:
        raise DomainError("n_qubits must be positive")
    as_seed(seed)
    rng = _term_rng(seed, 0)
    z = rng.standard_normal(n_qubits + 1) + 1j * rng.standard_normal(n_qubits + 1)
    return SymmetricState(n_qubits, z / np.linalg.norm(z))
