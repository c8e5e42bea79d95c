"""Conversion between Dicke amplitudes and Majorana constellations.

A symmetric N-qubit state with amplitudes c_k corresponds to the degree-N
polynomial

    p(z) = sum_k (-1)^k sqrt(C(N,k)) c_k z^(N-k),

whose roots are the stereographic images z = tan(theta/2) e^{i phi} of the
state's Majorana points (theta = 0 maps to z = 0; theta = pi to z = infinity,
realized as a drop in polynomial degree).  The map is inverted by expanding
the product of the root factors back into coefficients.

Root extraction uses companion-matrix eigenvalues.  An m-fold root is an
ill-conditioned target for any root finder: coefficient rounding at relative
level eps scatters its copies over a disc of radius ~eps^(1/m), which for
m >= 3 exceeds the default coincidence tolerance.  The centroid of that
cluster, however, is a well-conditioned function of the coefficients, so
repeated roots are recovered by detecting candidate clusters at a coarse
internal scale, collapsing each to its chart-plane mean polished by Newton
iteration on the (m-1)-th derivative, and accepting the collapse only when
the low-order derivatives of p vanish at the candidate point to within
coefficient-noise bounds.  Clusters failing that consistency check are split
and retried, so nearly-coincident but genuinely distinct points survive.
Once the multiplicity pattern is fixed, a constrained least-squares refit of
all point positions against the amplitudes removes the remaining
root-functional conditioning loss.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ._validation import DomainError, NumericalError
from .states import (
    BlochPoint,
    Constellation,
    SymmetricState,
    bloch_point_from_vector,
    chordal_distance,
)

# Chordal scale of the candidate-cluster detection pass.  Repeated roots
# scatter as eps^(1/m), amplified near the poles, so the net is cast wide;
# over-merged clusters fail the derivative consistency check and are split
# back apart at successively halved scales.
DETECTION_RADIUS = 0.25

# |p^(j)(z)| below SLACK times the absolute-value Horner bound counts as a
# numerical zero when certifying an m-fold root.
VALIDATION_SLACK = 1e-11

# Leading coefficients below this relative level are roots at infinity.
INFINITY_TRIM = 1e-12


@lru_cache(maxsize=64)
def _sqrt_binomials(n: int) -> np.ndarray:
    out = np.array([math.sqrt(math.comb(n, k)) for k in range(n + 1)])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def _binomials(m: int) -> np.ndarray:
    out = np.array([float(math.comb(m, k)) for k in range(m + 1)])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def _alternating_signs(n: int) -> np.ndarray:
    out = np.where(np.arange(n + 1) % 2 == 0, 1.0, -1.0)
    out.setflags(write=False)
    return out


def _binomial_factor(a: complex, b: complex, m: int) -> np.ndarray:
    """(a z - b)^m as a coefficient array, highest degree first."""
    i = np.arange(m + 1)
    return _binomials(m) * a ** (m - i) * (-b) ** i


def product_amplitudes(thetas, phis, mults, n_qubits: int) -> np.ndarray:
    """Unnormalized Dicke amplitudes of the symmetrized product state.

    The point (theta_i, phi_i) enters the product with multiplicity mults[i];
    the multiplicities must sum to n_qubits.  Shared by the constellation
    conversion and the witness optimizer, which calls this in its inner loop.
    """
    coef = np.ones(1, dtype=complex)
    for theta, phi, m in zip(thetas, phis, mults):
        half = theta / 2.0
        # snap the poles so Dicke-type states come out exactly
        a = 0.0 if theta == math.pi else complex(math.cos(half))
        b = math.sin(half) * complex(math.cos(phi), math.sin(phi))
        coef = np.convolve(coef, _binomial_factor(a, b, m))
    return _alternating_signs(n_qubits) * coef / _sqrt_binomials(n_qubits)


def from_constellation(c: Constellation) -> SymmetricState:
    """Normalized symmetric state with the given Majorana constellation."""
    thetas = [p.theta for p, _ in c.points]
    phis = [p.phi for p, _ in c.points]
    mults = [m for _, m in c.points]
    amps = product_amplitudes(thetas, phis, mults, c.n_qubits)
    norm = float(np.linalg.norm(amps))
    if norm < 1e-14:
        raise NumericalError("symmetrized product state collapsed numerically")
    return SymmetricState(c.n_qubits, amps / norm)


def _factor_terms(theta: float, phi: float, m: int):
    """Expansion of (a z - b)^m, its degree-(m-1) sibling, and derivatives."""
    half = theta / 2.0
    a = 0.0 if theta == math.pi else complex(math.cos(half))
    b = math.sin(half) * complex(math.cos(phi), math.sin(phi))
    full = _binomial_factor(a, b, m)
    reduced = _binomial_factor(a, b, m - 1) if m > 1 else np.ones(1, dtype=complex)
    da = 0.0 if theta == math.pi else -0.5 * math.sin(half)
    db = 0.5 * math.cos(half) * complex(math.cos(phi), math.sin(phi))
    return full, reduced, (a, b, da, db)


def product_amplitudes_jacobian(x, mults, n_qubits: int):
    """Unnormalized amplitudes u and their derivatives du/dx.

    x packs the d point angles as (theta_1..theta_d, phi_1..phi_d); the
    returned Jacobian is complex of shape (N+1, 2d) with theta columns first.
    """
    d = len(mults)
    factors = [_factor_terms(x[j], x[d + j], mults[j]) for j in range(d)]
    sqrtc = _sqrt_binomials(n_qubits)
    signs = _alternating_signs(n_qubits)

    coef = np.ones(1, dtype=complex)
    for full, _, _ in factors:
        coef = np.convolve(coef, full)
    u = signs * coef / sqrtc

    jac = np.empty((n_qubits + 1, 2 * d), dtype=complex)
    for j in range(d):
        rest = np.ones(1, dtype=complex)
        for i, (full, _, _) in enumerate(factors):
            if i != j:
                rest = np.convolve(rest, full)
        _, reduced, (a, b, da, db) = factors[j]
        partial = np.convolve(rest, reduced)
        m = mults[j]
        dcoef_t = m * np.convolve(partial, np.array([da, -db]))
        dcoef_p = m * np.concatenate([[0.0], partial * (-1j * b)])
        jac[:, j] = signs * dcoef_t / sqrtc
        jac[:, d + j] = signs * dcoef_p / sqrtc
    return u, jac


def majorana_coefficients(state: SymmetricState) -> np.ndarray:
    """Polynomial coefficients, highest degree first."""
    n = state.n_qubits
    return _alternating_signs(n) * _sqrt_binomials(n) * state.amplitudes


def _raw_roots(coef: np.ndarray) -> tuple[np.ndarray, int]:
    """Finite companion-matrix roots plus the count of roots at infinity."""
    scale = float(np.max(np.abs(coef)))
    n_inf = 0
    while n_inf < coef.size - 1 and abs(coef[n_inf]) < INFINITY_TRIM * scale:
        n_inf += 1
    trimmed = coef[n_inf:]
    if trimmed.size <= 1:
        return np.empty(0, dtype=complex), n_inf
    return np.roots(trimmed), n_inf


def _stereographic_point(z: complex) -> BlochPoint:
    theta = 2.0 * math.atan(abs(z))
    phi = math.atan2(z.imag, z.real) if abs(z) > 0 else 0.0
    return BlochPoint(theta, phi)


def _single_linkage(vectors: np.ndarray, tol: float) -> list[list[int]]:
    """Group row indices whose chains of pairwise distances stay within tol."""
    n = len(vectors)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if np.linalg.norm(vectors[i] - vectors[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _abs_horner(abs_coef: np.ndarray, x: float) -> float:
    acc = 0.0
    for c in abs_coef:
        acc = acc * x + c
    return acc


def _derivative_ladder(coef: np.ndarray, orders: int) -> list[np.ndarray]:
    ladder = [coef]
    for _ in range(orders):
        ladder.append(np.polyder(ladder[-1]))
    return ladder


def _is_m_fold_root(ladder: list[np.ndarray], z: complex, m: int) -> bool:
    """True when p and its first m-1 derivatives vanish at z within noise."""
    x = abs(z)
    for j in range(m):
        bound = _abs_horner(np.abs(ladder[j]), x)
        if abs(np.polyval(ladder[j], z)) > VALIDATION_SLACK * max(bound, 1e-300):
            return False
    return True


def _newton_polish(ladder: list[np.ndarray], z0: complex, m: int, leash: float) -> complex:
    """Refine z0 toward the simple root of p^(m-1); stay within the leash."""
    z = z0
    for _ in range(60):
        denom = np.polyval(ladder[m], z)
        if denom == 0:
            break
        step = np.polyval(ladder[m - 1], z) / denom
        z_next = z - step
        if abs(z_next - z0) > leash:
            return z0
        z = z_next
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def _collapse_cluster(coef: np.ndarray, members: list, radius: float) -> list:
    """Polished root copies for one candidate cluster, splitting on failure.

    Members are finite roots (complex) or None for a root at infinity.  The
    work happens in whichever stereographic chart keeps the cluster near the
    origin; infinity markers sit at w = 0 of the inverted chart, so a cluster
    straddling the infinity trim is refined as one m-fold root.
    """
    m = len(members)
    if m == 1:
        return list(members)

    n_inf = sum(1 for z in members if z is None)
    finite = np.array([z for z in members if z is not None], dtype=complex)
    invert = n_inf > 0 or abs(finite.mean()) > 1.0
    if invert:
        chart = np.concatenate(
            [np.array([1.0 / z for z in finite]), np.zeros(n_inf, dtype=complex)]
        )
        poly = coef[::-1]
    else:
        chart = finite
        poly = coef

    ladder = _derivative_ladder(poly, m)
    z0 = chart.mean()
    # the polished root must represent this cluster: Newton may tighten the
    # mean but not escape to some other nearby zero of p^(m-1)
    spread = float(np.max(np.abs(chart - z0)))
    leash = 2.0 * spread + 1e-9 * (1.0 + abs(z0))
    z_star = _newton_polish(ladder, z0, m, leash)
    if not _is_m_fold_root(ladder, z_star, m):
        z_star = z0  # Newton may have been led astray; try the plain mean
    if _is_m_fold_root(ladder, z_star, m):
        if invert:
            return [None] * m if z_star == 0 else [1.0 / z_star] * m
        return [complex(z_star)] * m

    # Not a consistent m-fold root: split at half scale and retry the parts.
    if radius < 1e-12:
        return list(members)
    vecs = _sphere_vectors(members)
    subgroups = _single_linkage(vecs, radius / 2.0)
    if len(subgroups) == 1:
        return _collapse_cluster(coef, members, radius / 2.0)
    out: list = []
    for idx in subgroups:
        out.extend(_collapse_cluster(coef, [members[i] for i in idx], radius / 2.0))
    return out


def _sphere_vectors(members) -> np.ndarray:
    vecs = np.empty((len(members), 3))
    for i, z in enumerate(members):
        if z is None:
            vecs[i] = (0.0, 0.0, -1.0)
        else:
            vecs[i] = _stereographic_point(complex(z)).unit_vector()
    return vecs


def _polished_roots(coef: np.ndarray, raw: np.ndarray, n_inf: int) -> list:
    members = [complex(z) for z in raw] + [None] * n_inf
    if not members:
        return []
    vecs = _sphere_vectors(members)
    polished: list = []
    for idx in _single_linkage(vecs, DETECTION_RADIUS):
        polished.extend(
            _collapse_cluster(coef, [members[i] for i in idx], DETECTION_RADIUS)
        )
    return polished


def _spherical_centroid(vectors: np.ndarray, weights: np.ndarray) -> np.ndarray:
    mean = (weights[:, None] * vectors).sum(axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0.0:
        raise NumericalError("degenerate point cluster has no spherical centroid")
    return mean / norm


def merge_coincident(pairs, tol: float) -> tuple[tuple[BlochPoint, int], ...]:
    """Single-linkage merge of (point, multiplicity) pairs within chordal tol.

    Each merged cluster becomes one point at the multiplicity-weighted
    spherical centroid; output is sorted by multiplicity descending, then
    theta, then phi.
    """
    pairs = list(pairs)
    vecs = np.array([p.unit_vector() for p, _ in pairs])
    weights = np.array([float(m) for _, m in pairs])
    merged = []
    for idx in _single_linkage(vecs, tol):
        centroid = _spherical_centroid(vecs[idx], weights[idx])
        total = int(sum(pairs[i][1] for i in idx))
        merged.append((bloch_point_from_vector(centroid), total))
    merged.sort(key=lambda pm: (-pm[1], pm[0].theta, pm[0].phi))
    return tuple(merged)


def _refine_against_amplitudes(pairs, amps, n: int):
    """Least-squares refit of point positions, multiplicity pattern fixed.

    Individual repeated roots are ill-conditioned targets for root finders,
    but once the multiplicity structure is known, fitting the constrained
    model c(points) ~ e^{i gamma} c_input is not; a short Levenberg-Marquardt
    run pushes cluster estimates to the accuracy the amplitudes support.  The
    global phase is an explicit parameter so the model is smooth.
    """
    from scipy.optimize import least_squares

    d = len(pairs)
    mults = [m for _, m in pairs]
    x0 = np.array([p.theta for p, _ in pairs] + [p.phi for p, _ in pairs] + [0.0])
    u0 = product_amplitudes(x0[:d], x0[d : 2 * d], mults, n)
    s0 = complex(np.vdot(amps, u0 / np.linalg.norm(u0)))
    if abs(s0) < 1e-6:
        return pairs
    x0[-1] = math.atan2(s0.imag, s0.real)

    def residual(x):
        u = product_amplitudes(x[:d], x[d : 2 * d], mults, n)
        c = u / np.linalg.norm(u)
        r = c - np.exp(1j * x[-1]) * amps
        return np.concatenate([r.real, r.imag])

    def jacobian(x):
        u, ju = product_amplitudes_jacobian(x[: 2 * d], mults, n)
        norm = np.linalg.norm(u)
        c = u / norm
        jc = (ju - np.outer(c, np.real(c.conj() @ ju))) / norm
        dphase = -1j * np.exp(1j * x[-1]) * amps
        full = np.hstack([jc, dphase[:, None]])
        return np.vstack([full.real, full.imag])

    start_norm = float(np.linalg.norm(residual(x0)))
    fit = least_squares(
        residual,
        x0,
        jac=jacobian,
        method="lm",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=200,
    )
    if not np.isfinite(fit.cost) or float(np.linalg.norm(fit.fun)) > start_norm:
        return pairs

    refined = []
    for j in range(d):
        theta, phi = fit.x[j], fit.x[d + j]
        v = np.array(
            [
                math.sin(theta) * math.cos(phi),
                math.sin(theta) * math.sin(phi),
                math.cos(theta),
            ]
        )
        refined.append((bloch_point_from_vector(v), mults[j]))
    refined.sort(key=lambda pm: (-pm[1], pm[0].theta, pm[0].phi))
    return tuple(refined)


def to_constellation(s: SymmetricState, coincidence_tol: float = 1e-6) -> Constellation:
    """Majorana constellation of a symmetric state.

    Points closer than coincidence_tol (chordal metric, single linkage) are
    merged into one point carrying their total multiplicity; each merged
    cluster is represented by its multiplicity-weighted spherical centroid,
    and constellations with repeated points get a final multiplicity-aware
    least-squares polish against the amplitudes.  The output is sorted by
    multiplicity descending, then theta, then phi.
    """
    if not 0.0 < coincidence_tol < 0.5:
        raise DomainError(f"coincidence_tol must lie in (0, 0.5), got {coincidence_tol!r}")
    norm_sq = float(np.sum(np.abs(s.amplitudes) ** 2))
    if abs(norm_sq - 1.0) > 1e-12:
        raise DomainError("state must be normalized")

    coef = majorana_coefficients(s)
    raw, n_inf = _raw_roots(coef)
    roots = _polished_roots(coef, raw, n_inf)

    points = [
        (BlochPoint(math.pi, 0.0) if z is None else _stereographic_point(z), 1)
        for z in roots
    ]
    merged = merge_coincident(points, coincidence_tol)
    if any(m > 1 for _, m in merged):
        refined = _refine_against_amplitudes(merged, s.amplitudes, s.n_qubits)
        if _separation_at_least(refined, coincidence_tol):
            merged = refined
    return Constellation(s.n_qubits, merged)


def _separation_at_least(pairs, tol: float) -> bool:
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if chordal_distance(pairs[i][0], pairs[j][0]) < tol:
                return False
    return True
