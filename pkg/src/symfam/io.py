"""JSON file formats for states, density matrices, and bases.

All numbers are written with Python's shortest round-trip float repr, so a
write-then-read cycle reproduces values bit-exactly.
"""

from __future__ import annotations

import json

import numpy as np

from ._validation import DomainError
from .sepbasis import SeparableBasis, build_basis
from .states import BlochPoint, SymmetricDensityMatrix, SymmetricState


def state_to_document(s: SymmetricState) -> dict:
    return {
        "n_qubits": s.n_qubits,
        "amplitudes": [[float(c.real), float(c.imag)] for c in s.amplitudes],
    }


def document_to_state(doc: dict) -> SymmetricState:
    try:
        n = doc["n_qubits"]
        pairs = doc["amplitudes"]
        amps = np.array([complex(re, im) for re, im in pairs])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed state document: {exc}") from None
    return SymmetricState(n, amps)


def density_to_document(rho: SymmetricDensityMatrix) -> dict:
    flat = rho.entries.reshape(-1)
    return {
        "n_qubits": rho.n_qubits,
        "entries": [[float(c.real), float(c.imag)] for c in flat],
    }


def document_to_density(doc: dict) -> SymmetricDensityMatrix:
    try:
        n = int(doc["n_qubits"])
        pairs = doc["entries"]
        flat = np.array([complex(re, im) for re, im in pairs])
        mat = flat.reshape(n + 1, n + 1)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed density document: {exc}") from None
    return SymmetricDensityMatrix(n, mat)


def basis_to_document(basis: SeparableBasis) -> dict:
    return {
        "n_qubits": basis.n_qubits,
        "directions": [[p.theta, p.phi] for p in basis.directions],
    }


def document_to_basis(doc: dict) -> SeparableBasis:
    """Rebuild the basis from its directions; F and its conditioning are
    recomputed and revalidated."""
    try:
        n = int(doc["n_qubits"])
        points = [BlochPoint(t, p) for t, p in doc["directions"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed basis document: {exc}") from None
    return build_basis(n, points)


def _write(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _read(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read document {path}: {exc}") from None


def write_state(path, s: SymmetricState) -> None:
    _write(path, state_to_document(s))


def read_state(path) -> SymmetricState:
    return document_to_state(_read(path))


def write_density(path, rho: SymmetricDensityMatrix) -> None:
    _write(path, density_to_document(rho))


def read_density(path) -> SymmetricDensityMatrix:
    return document_to_density(_read(path))


def write_basis(path, basis: SeparableBasis) -> None:
    _write(path, basis_to_document(basis))


def read_basis(path) -> SeparableBasis:
    return document_to_basis(_read(path))
