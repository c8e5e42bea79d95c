import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from symfam import (
    FamilyClassifier,
    SeparableBasisTransformer,
    WitnessDetector,
    dicke,
    ghz,
    maximally_mixed,
    projector,
    tetrahedron_state,
)


def state_rows(*states):
    return np.vstack([s.amplitudes for s in states])


def density_rows(*rhos):
    return np.vstack([r.entries.reshape(-1) for r in rhos])


class TestFamilyClassifier:
    def test_predict_labels(self):
        X = state_rows(ghz(4), dicke(4, 1), tetrahedron_state())
        clf = FamilyClassifier().fit(X)
        assert list(clf.predict(X)) == ["1,1,1,1", "3,1", "1,1,1,1"]

    def test_requires_fit(self):
        with pytest.raises(NotFittedError):
            FamilyClassifier().predict(state_rows(ghz(4)))

    def test_get_set_params_and_clone(self):
        clf = FamilyClassifier(coincidence_tol=1e-5)
        assert clf.get_params() == {"coincidence_tol": 1e-5}
        twin = clone(clf)
        assert twin.get_params() == clf.get_params()
        clf.set_params(coincidence_tol=1e-7)
        assert clf.coincidence_tol == 1e-7

    def test_score_accuracy(self):
        X = state_rows(ghz(4), dicke(4, 1))
        clf = FamilyClassifier().fit(X)
        assert clf.score(X, np.array(["1,1,1,1", "3,1"], dtype=object)) == 1.0


@pytest.fixture(scope="module")
def fitted():
    det = WitnessDetector(family="4", n_starts=24, seed=0)
    return det.fit(state_rows(ghz(4)))


class TestWitnessDetector:

    def test_alpha(self, fitted):
        assert fitted.alpha_ == pytest.approx(0.5, abs=1e-8)
        assert fitted.confidence_ >= 3

    def test_decision_function_and_predict(self, fitted):
        X = density_rows(projector(ghz(4)), maximally_mixed(4))
        values = fitted.decision_function(X)
        assert values[0] == pytest.approx(-0.5, abs=1e-8)
        assert values[1] == pytest.approx(fitted.alpha_ - 0.2, abs=1e-10)
        assert list(fitted.predict(X)) == [True, False]

    def test_family_tuple_accepted(self):
        det = WitnessDetector(family=(3, 1), n_starts=16).fit(state_rows(ghz(4)))
        assert 0 < det.alpha_ <= 1

    def test_requires_fit(self):
        with pytest.raises(NotFittedError):
            WitnessDetector(family="4").decision_function(
                density_rows(maximally_mixed(4))
            )

    def test_clone_keeps_params(self):
        det = WitnessDetector(family="2,2", n_starts=8, seed=5)
        twin = clone(det)
        assert twin.get_params()["family"] == "2,2"
        assert twin.get_params()["n_starts"] == 8


class TestSeparableBasisTransformer:
    def test_transform_round_trip(self):
        tr = SeparableBasisTransformer(n_qubits=2, seed=0).fit()
        X = density_rows(projector(ghz(2)), maximally_mixed(2))
        coeffs = tr.transform(X)
        assert coeffs.shape == (2, 9)
        assert np.allclose(coeffs.sum(axis=1), 1.0, atol=1e-10)
        back = tr.inverse_transform(coeffs)
        assert np.allclose(back, X, atol=1e-9)

    def test_infers_n_from_data(self):
        X = density_rows(maximally_mixed(3))
        tr = SeparableBasisTransformer(seed=0).fit(X)
        assert tr.basis_.n_qubits == 3

    def test_fit_without_information_fails(self):
        from symfam import DomainError

        with pytest.raises(DomainError):
            SeparableBasisTransformer().fit()

    def test_requires_fit(self):
        with pytest.raises(NotFittedError):
            SeparableBasisTransformer(n_qubits=2).transform(
                density_rows(maximally_mixed(2))
            )
