"""Independent reference implementations used to pin expected test values.

Everything here deliberately avoids the package's own code paths: Dicke
states and product projectors are built in the full 2^N tensor-product
space, partition counting uses plain recursion, and the transitive
reduction is brute force.
"""

import math
from functools import lru_cache
from itertools import combinations

import numpy as np


def dicke_vector_full(n, k):
    """|D_n^(k)> as a 2^n vector (bit i of the index = qubit i)."""
    vec = np.zeros(2**n, dtype=complex)
    for ones in combinations(range(n), k):
        idx = sum(1 << i for i in ones)
        vec[idx] = 1.0
    return vec / math.sqrt(math.comb(n, k))


def product_state_full(n, theta, phi):
    """(cos(theta/2)|0> + sin(theta/2)e^{i phi}|1>)^{tensor n} in 2^n dims."""
    single = np.array(
        [math.cos(theta / 2), math.sin(theta / 2) * np.exp(1j * phi)], dtype=complex
    )
    out = np.array([1.0 + 0j])
    for _ in range(n):
        out = np.kron(out, single)
    return out


def symmetric_amplitudes_via_full_space(n, theta, phi):
    """Dicke amplitudes of a product state, computed in the full space."""
    full = product_state_full(n, theta, phi)
    return np.array(
        [np.vdot(dicke_vector_full(n, k), full) for k in range(n + 1)]
    )


def product_projector_via_full_space(n, theta, phi):
    """Symmetric-subspace block of the product projector, via the full space."""
    amps = symmetric_amplitudes_via_full_space(n, theta, phi)
    return np.outer(amps, amps.conj())


@lru_cache(maxsize=None)
def _count(n, cap):
    if n == 0:
        return 1
    return sum(_count(n - x, x) for x in range(min(n, cap), 0, -1))


def partition_count(n):
    """p(n) by plain recursion over largest parts."""
    return _count(n, n)


def brute_transitive_reduction(nodes, relation):
    """Cover pairs of a strict partial order given as a predicate."""
    edges = set()
    for a in nodes:
        for b in nodes:
            if not relation(a, b):
                continue
            if any(relation(a, c) and relation(c, b) for c in nodes):
                continue
            edges.add((a, b))
    return edges


def align_global_phase(reference, candidate):
    """Rotate candidate's global phase to best match reference."""
    inner = np.vdot(reference, candidate)
    if abs(inner) == 0.0:
        return candidate
    return candidate * (inner.conjugate() / abs(inner))


def random_bloch_point(rng):
    from symfam import BlochPoint

    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    theta = math.atan2(math.hypot(v[0], v[1]), v[2])
    phi = math.atan2(v[1], v[0])
    return BlochPoint(theta, phi)


def random_separated_constellation(n, rng, min_separation=0.1, pattern=None):
    """Uniform points conditioned on pairwise chordal separation."""
    from symfam import Constellation, chordal_distance, enumerate_partitions

    if pattern is None:
        options = enumerate_partitions(n)
        pattern = options[int(rng.integers(len(options)))]
    while True:
        pts = [random_bloch_point(rng) for _ in pattern]
        if all(
            chordal_distance(pts[i], pts[j]) >= min_separation
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        ):
            return Constellation(n, tuple(zip(pts, pattern)))


def random_mixed_state(n, rng, n_terms=4):
    """Generic full-support mixed state on the symmetric subspace."""
    from symfam import SymmetricDensityMatrix

    dim = n + 1
    total = np.zeros((dim, dim), dtype=complex)
    weights = rng.standard_exponential(n_terms)
    weights /= weights.sum()
    for w in weights:
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        z /= np.linalg.norm(z)
        total += w * np.outer(z, z.conj())
    total = 0.5 * (total + total.conj().T)
    total /= np.trace(total).real
    return SymmetricDensityMatrix(n, total)
