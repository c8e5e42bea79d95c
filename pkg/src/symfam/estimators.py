"""Scikit-learn style estimators wrapping the core algorithms.

These adapters speak plain 2-D arrays so the package composes with
sklearn pipelines, cloning, and grid search:

- rows of a state matrix are Dicke amplitude vectors (complex, N+1 columns);
- rows of a density matrix batch are row-major flattened (N+1)x(N+1)
  matrices (complex, (N+1)^2 columns).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import DomainError
from .families import classify_pure, format_partition, parse_partition
from .sepbasis import build_basis, choose_points, decompose, reconstruct
from .states import SymmetricDensityMatrix, SymmetricState
from .witness import OptimizerConfig, build_witness, evaluate


def _as_state_rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] < 2:
        raise DomainError("expected a 2-D array of amplitude rows (N+1 columns)")
    return X


def _as_density_rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.ndim == 1:
        X = X[None, :]
    side = int(round(np.sqrt(X.shape[1])))
    if X.ndim != 2 or side * side != X.shape[1] or side < 2:
        raise DomainError(
            "expected a 2-D array of flattened density matrices ((N+1)^2 columns)"
        )
    return X


def _check_fitted(estimator, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"This {type(estimator).__name__} instance is not fitted yet; "
            "call 'fit' first."
        )


class FamilyClassifier(BaseEstimator, ClassifierMixin):
    """Assign each pure symmetric state to its entanglement family.

    predict returns partition labels like "3,1" for rows of Dicke
    amplitudes.  The classifier has no trainable parameters; fit records the
    qubit count and validates the input.
    """

    def __init__(self, coincidence_tol: float = 1e-6):
        self.coincidence_tol = coincidence_tol

    def fit(self, X, y=None):
        X = _as_state_rows(X)
        self.n_qubits_ = X.shape[1] - 1
        return self

    def predict(self, X):
        _check_fitted(self, "n_qubits_")
        X = _as_state_rows(X)
        labels = []
        for row in X:
            state = SymmetricState(X.shape[1] - 1, row)
            labels.append(
                format_partition(classify_pure(state, self.coincidence_tol))
            )
        return np.array(labels, dtype=object)


class WitnessDetector(BaseEstimator):
    """Witness-based detector of states outside one family's closure.

    fit takes the reference pure state (a single amplitude row) and runs the
    overlap maximization; decision_function returns Tr(W rho) per flattened
    density-matrix row, and predict flags detection (value < 0, i.e. the
    state is certified to lie outside the family).
    """

    def __init__(
        self,
        family: str = "",
        n_starts: int = 64,
        max_iterations: int = 500,
        convergence_tol: float = 1e-10,
        seed: int = 0,
        method: str = "nelder-mead",
    ):
        self.family = family
        self.n_starts = n_starts
        self.max_iterations = max_iterations
        self.convergence_tol = convergence_tol
        self.seed = seed
        self.method = method

    def _config(self) -> OptimizerConfig:
        return OptimizerConfig(
            n_starts=self.n_starts,
            max_iterations=self.max_iterations,
            convergence_tol=self.convergence_tol,
            seed=self.seed,
            method=self.method,
        )

    def fit(self, X, y=None):
        X = _as_state_rows(X)
        if X.shape[0] != 1:
            raise DomainError("fit expects exactly one reference state row")
        family = (
            parse_partition(self.family)
            if isinstance(self.family, str)
            else tuple(self.family)
        )
        psi = SymmetricState(X.shape[1] - 1, X[0])
        self.witness_ = build_witness(psi, family, self._config())
        self.alpha_ = self.witness_.alpha
        self.confidence_ = self.witness_.confidence
        return self

    def decision_function(self, X):
        _check_fitted(self, "witness_")
        X = _as_density_rows(X)
        n = int(round(np.sqrt(X.shape[1]))) - 1
        values = []
        for row in X:
            rho = SymmetricDensityMatrix(n, row.reshape(n + 1, n + 1))
            values.append(evaluate(self.witness_, rho))
        return np.array(values)

    def predict(self, X):
        return self.decision_function(X) < 0.0


class SeparableBasisTransformer(BaseEstimator, TransformerMixin):
    """Affine coordinates over a separable product-projector basis.

    fit draws the basis directions (rejection sampling on the condition
    number of the coefficient matrix); transform maps flattened density
    matrices to their affine coefficient vectors, and inverse_transform maps
    coefficients back to flattened matrices.
    """

    def __init__(
        self,
        n_qubits: int | None = None,
        seed: int = 0,
        cond_threshold: float = 1e8,
        max_attempts: int = 50,
    ):
        self.n_qubits = n_qubits
        self.seed = seed
        self.cond_threshold = cond_threshold
        self.max_attempts = max_attempts

    def fit(self, X=None, y=None):
        n = self.n_qubits
        if n is None:
            if X is None:
                raise DomainError("n_qubits is required when fitting without data")
            n = int(round(np.sqrt(_as_density_rows(X).shape[1]))) - 1
        points = choose_points(n, self.seed, self.cond_threshold, self.max_attempts)
        self.basis_ = build_basis(n, points)
        return self

    def transform(self, X):
        _check_fitted(self, "basis_")
        X = _as_density_rows(X)
        n = self.basis_.n_qubits
        out = []
        for row in X:
            rho = SymmetricDensityMatrix(n, row.reshape(n + 1, n + 1))
            out.append(decompose(rho, self.basis_))
        return np.array(out)

    def inverse_transform(self, X):
        _check_fitted(self, "basis_")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        return np.array([reconstruct(row, self.basis_).reshape(-1) for row in X])
