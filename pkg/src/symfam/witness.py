"""Maximal family overlaps and projector-based witness operators.

For a reference state |psi> and a family D, the witness is

    W = alpha_D * 1 - |psi><psi|,     alpha_D = max |<phi|psi>|^2

with the maximum over all pure states phi whose constellation carries the
multiplicities of D.  Points are allowed to coincide during the search, so
the maximization runs over the family's closure (the family plus all of its
descendants); that is what makes Tr(W rho) nonnegative on the compact convex
mixed-state family.

The maximization is non-convex.  It is attacked by multi-start local search
(derivative-free simplex by default, analytic-gradient L-BFGS optionally),
with start points drawn uniformly on the sphere from a counter-based
generator keyed by (seed, start index), so results are reproducible and
independent of evaluation order.  Global optimality is not certified: the
number of independent starts that reproduced the best value is reported as a
confidence count, and the start pool doubles until at least three agree.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ._validation import DomainError, NumericalError, as_seed
from .families import Partition, canonical_partition, descends
from .majorana import merge_coincident, product_amplitudes, product_amplitudes_jacobian
from .states import (
    Constellation,
    SymmetricDensityMatrix,
    SymmetricState,
    bloch_point_from_vector,
)

# The start pool doubles at most this many times before the search gives up
# on reconfirmation and reports the confidence count it actually reached.
MAX_DOUBLINGS = 3
REPRODUCTION_TOL = 1e-8
MIN_REPRODUCTIONS = 3


@dataclass(frozen=True)
class OptimizerConfig:
    """Multi-start search settings; defaults reproduce published overlaps."""

    n_starts: int = 64
    max_iterations: int = 500
    convergence_tol: float = 1e-10
    seed: int = 0
    method: str = "nelder-mead"

    def __post_init__(self):
        if self.n_starts < 1 or self.max_iterations < 1:
            raise DomainError("n_starts and max_iterations must be positive")
        if not self.convergence_tol > 0:
            raise DomainError("convergence_tol must be positive")
        as_seed(self.seed)
        if self.method not in ("nelder-mead", "gradient"):
            raise DomainError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class Witness:
    """alpha * identity minus the projector onto the reference state."""

    reference_state: SymmetricState
    family: Partition
    alpha: float
    argmax_constellation: Constellation
    confidence: int

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0 + 1e-12:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")


def _neg_overlap_sq(x, psi_amps, mults, n):
    d = len(mults)
    u = product_amplitudes(x[:d], x[d:], mults, n)
    s = complex(np.vdot(u, psi_amps))
    nn = float(np.real(np.vdot(u, u)))
    return -(abs(s) ** 2) / nn


def _neg_overlap_sq_grad(x, psi_amps, mults, n):
    """Objective and analytic gradient for the gradient-ascent path."""
    u, ju = product_amplitudes_jacobian(x, mults, n)
    s = complex(np.vdot(u, psi_amps))
    nn = float(np.real(np.vdot(u, u)))
    f = (abs(s) ** 2) / nn
    ds = np.conj(ju).T @ psi_amps
    dn = 2.0 * np.real(np.conj(u) @ ju)
    df = (2.0 * np.real(s.conjugate() * ds) * nn - (abs(s) ** 2) * dn) / nn**2
    return -f, -df


def _start_point(seed: int, start_index: int, d: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=[seed, start_index]))
    thetas = np.arccos(rng.uniform(-1.0, 1.0, d))
    phis = rng.uniform(0.0, 2.0 * math.pi, d)
    return np.concatenate([thetas, phis])


def _local_search(x0, psi_amps, mults, n, cfg) -> tuple[float, np.ndarray]:
    if cfg.method == "gradient":
        res = minimize(
            _neg_overlap_sq_grad,
            x0,
            args=(psi_amps, mults, n),
            jac=True,
            method="L-BFGS-B",
            options=dict(maxiter=cfg.max_iterations, ftol=cfg.convergence_tol, gtol=1e-12),
        )
    else:
        res = minimize(
            _neg_overlap_sq,
            x0,
            args=(psi_amps, mults, n),
            method="Nelder-Mead",
            options=dict(
                maxiter=cfg.max_iterations,
                xatol=1e-9,
                fatol=cfg.convergence_tol,
            ),
        )
    return -float(res.fun), np.asarray(res.x)


@dataclass(frozen=True)
class OverlapResult:
    alpha: float
    argmax: Constellation
    confidence: int
    n_starts_used: int


def _constellation_from_parameters(x, mults, n) -> Constellation:
    d = len(mults)
    pairs = []
    for j in range(d):
        theta, phi = x[j], x[d + j]
        v = np.array(
            [
                math.sin(theta) * math.cos(phi),
                math.sin(theta) * math.sin(phi),
                math.cos(theta),
            ]
        )
        pairs.append((bloch_point_from_vector(v), mults[j]))
    return Constellation(n, merge_coincident(pairs, 1e-6))


def maximize_overlap(psi: SymmetricState, family, cfg: OptimizerConfig | None = None) -> OverlapResult:
    """Full multi-start result, including the reproduction confidence count."""
    cfg = cfg or OptimizerConfig()
    fam = canonical_partition(family)
    if sum(fam) != psi.n_qubits:
        raise DomainError(
            f"family {fam} is not a partition of n_qubits={psi.n_qubits}"
        )
    mults = list(fam)
    n = psi.n_qubits
    psi_amps = psi.amplitudes

    values: list[float] = []
    xs: list[np.ndarray] = []
    pool = cfg.n_starts
    for round_ in range(MAX_DOUBLINGS + 1):
        for start in range(len(values), pool):
            x0 = _start_point(cfg.seed, start, len(mults))
            val, x = _local_search(x0, psi_amps, mults, n, cfg)
            values.append(val)
            xs.append(x)
        best = max(values)
        confidence = sum(1 for v in values if v >= best - REPRODUCTION_TOL)
        if confidence >= MIN_REPRODUCTIONS or round_ == MAX_DOUBLINGS:
            break
        pool *= 2

    # exact max, tie broken by lowest start index
    best_index = next(i for i, v in enumerate(values) if v == best)
    alpha = float(min(best, 1.0))
    if not alpha > 0.0:
        raise NumericalError("overlap maximization returned a nonpositive value")
    argmax = _constellation_from_parameters(xs[best_index], mults, n)
    return OverlapResult(alpha, argmax, confidence, len(values))


def max_overlap(psi: SymmetricState, family, cfg: OptimizerConfig | None = None):
    """Best squared overlap with the closure of the family, and its argmax."""
    res = maximize_overlap(psi, family, cfg)
    return res.alpha, res.argmax


def build_witness(psi: SymmetricState, family, cfg: OptimizerConfig | None = None) -> Witness:
    """Witness alpha*1 - |psi><psi| for states outside the family's closure.

    Warns (does not fail) when psi itself lies in the closure of the family,
    which makes the witness vacuous.
    """
    from .families import classify_pure

    fam = canonical_partition(family)
    psi_family = classify_pure(psi)
    if psi_family == fam or descends(fam, psi_family):
        warnings.warn(
            f"reference state lies in the closure of {fam}; "
            "the witness cannot detect anything",
            stacklevel=2,
        )
    res = maximize_overlap(psi, fam, cfg)
    return Witness(psi, fam, res.alpha, res.argmax, res.confidence)


def evaluate(w: Witness, rho: SymmetricDensityMatrix) -> float:
    """Tr(W rho) on the symmetric subspace: alpha - <psi|rho|psi>."""
    if rho.n_qubits != w.reference_state.n_qubits:
        raise DomainError(
            f"qubit counts differ: witness {w.reference_state.n_qubits}, "
            f"state {rho.n_qubits}"
        )
    amps = w.reference_state.amplitudes
    expect = float(np.real(np.vdot(amps, rho.entries @ amps)))
    return w.alpha - expect


def witness_battery(psi: SymmetricState, cfg: OptimizerConfig | None = None) -> list[Witness]:
    """One witness per proper family, ordered by diversity degree descending."""
    from .families import enumerate_partitions

    n = psi.n_qubits
    top = (1,) * n
    fams = [p for p in enumerate_partitions(n) if p != top]
    fams.sort(key=lambda p: -len(p))
    return [build_witness(psi, fam, cfg) for fam in fams]
