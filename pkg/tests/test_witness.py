import math

import pytest
from scipy.spatial.transform import Rotation

from symfam import (
    BlochPoint,
    Constellation,
    DomainError,
    OptimizerConfig,
    descends,
    dicke,
    enumerate_partitions,
    evaluate,
    from_constellation,
    ghz,
    max_overlap,
    maximally_mixed,
    maximize_overlap,
    build_witness,
    overlap,
    projector,
    random_symmetric_pure,
    tetrahedron_state,
    to_constellation,
    witness_battery,
)

FAST = OptimizerConfig(n_starts=24)


class TestMaxOverlap:
    def test_dicke_in_own_family(self):
        alpha, _ = max_overlap(dicke(4, 1), (3, 1), FAST)
        assert alpha == pytest.approx(1.0, abs=1e-8)
        alpha, _ = max_overlap(dicke(5, 2), (3, 2), FAST)
        assert alpha == pytest.approx(1.0, abs=1e-8)

    def test_full_family_closure_is_everything(self):
        psi = random_symmetric_pure(4, seed=5)
        alpha, _ = max_overlap(psi, (1, 1, 1, 1))
        assert alpha == pytest.approx(1.0, abs=1e-7)

    def test_ghz_separable_overlap(self):
        alpha, argmax = max_overlap(ghz(4), (4,), FAST)
        assert alpha == pytest.approx(0.5, abs=1e-9)
        # the maximizer is a pole state, matching |<0000|GHZ>|^2 = 1/2
        assert len(argmax.points) == 1

    def test_mismatched_family(self):
        with pytest.raises(DomainError):
            max_overlap(ghz(4), (3, 2))

    def test_argmax_consistent_with_alpha(self):
        res = maximize_overlap(tetrahedron_state(), (3, 1), FAST)
        realized = abs(overlap(from_constellation(res.argmax), tetrahedron_state())) ** 2
        assert realized == pytest.approx(res.alpha, abs=1e-8)

    def test_seed_determinism(self):
        cfg = OptimizerConfig(n_starts=16, seed=123)
        a1 = maximize_overlap(ghz(4), (2, 2), cfg)
        a2 = maximize_overlap(ghz(4), (2, 2), cfg)
        assert a1.alpha == a2.alpha
        assert a1.confidence == a2.confidence

    def test_gradient_path_agrees(self):
        nm = max_overlap(ghz(4), (2, 2), OptimizerConfig(n_starts=16))[0]
        gr = max_overlap(
            ghz(4), (2, 2), OptimizerConfig(n_starts=16, method="gradient")
        )[0]
        assert nm == pytest.approx(gr, abs=1e-7)

    def test_global_phase_invariance(self):
        from symfam import SymmetricState
        import numpy as np

        psi = random_symmetric_pure(4, seed=31)
        rotated = SymmetricState(4, psi.amplitudes * np.exp(1j * 0.987))
        a = max_overlap(psi, (2, 2), FAST)[0]
        b = max_overlap(rotated, (2, 2), FAST)[0]
        assert a == pytest.approx(b, abs=1e-9)

    def test_rotation_invariance(self):
        psi = random_symmetric_pure(4, seed=2)
        con = to_constellation(psi)
        rot = Rotation.from_rotvec([0.4, -0.7, 0.2]).as_matrix()
        rotated_points = []
        for p, m in con.points:
            v = rot @ p.unit_vector()
            theta = math.atan2(math.hypot(v[0], v[1]), v[2])
            phi = math.atan2(v[1], v[0])
            rotated_points.append((BlochPoint(theta, phi), m))
        psi_rot = from_constellation(Constellation(4, tuple(rotated_points)))
        a = max_overlap(psi, (3, 1), FAST)[0]
        b = max_overlap(psi_rot, (3, 1), FAST)[0]
        assert a == pytest.approx(b, abs=1e-8)

    def test_hierarchy_monotonicity_sample(self):
        cfg = OptimizerConfig(n_starts=24, seed=9)
        for seed in (21, 22):
            psi = random_symmetric_pure(4, seed=seed)
            alphas = {
                fam: max_overlap(psi, fam, cfg)[0]
                for fam in enumerate_partitions(4)
            }
            for a in alphas:
                for b in alphas:
                    if descends(a, b):
                        assert alphas[b] <= alphas[a] + 1e-6


class TestBuildWitness:
    def test_ghz_separable_witness(self):
        w = build_witness(ghz(4), (4,), FAST)
        assert w.alpha == pytest.approx(0.5, abs=1e-8)
        assert w.family == (4,)
        assert w.confidence >= 3

    def test_vacuous_witness_warns(self):
        with pytest.warns(UserWarning):
            build_witness(dicke(4, 1), (2, 1, 1), FAST)

    def test_non_vacuous_does_not_warn(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            build_witness(ghz(4), (3, 1), FAST)


@pytest.fixture(scope="module")
def ghz_sep_witness():
    return build_witness(ghz(4), (4,), FAST)


class TestEvaluate:

    def test_detects_its_reference(self, ghz_sep_witness):
        value = evaluate(ghz_sep_witness, projector(ghz(4)))
        assert value == pytest.approx(-0.5, abs=1e-8)
        assert value < 0

    def test_saturating_separable_state(self, ghz_sep_witness):
        value = evaluate(ghz_sep_witness, projector(dicke(4, 0)))
        assert value == pytest.approx(0.0, abs=1e-8)

    def test_maximally_mixed(self, ghz_sep_witness):
        value = evaluate(ghz_sep_witness, maximally_mixed(4))
        assert value == pytest.approx(ghz_sep_witness.alpha - 0.2, abs=1e-12)

    def test_mismatched_n(self, ghz_sep_witness):
        with pytest.raises(DomainError):
            evaluate(ghz_sep_witness, maximally_mixed(3))


class TestWitnessBattery:
    def test_ghz_battery(self):
        battery = witness_battery(ghz(4), FAST)
        families = [w.family for w in battery]
        assert families == [(2, 1, 1), (3, 1), (2, 2), (4,)]
        expected = {(4,): 0.5, (3, 1): 0.5, (2, 2): 0.75, (2, 1, 1): 0.875}
        for w in battery:
            assert w.alpha == pytest.approx(expected[w.family], abs=1e-6)

    def test_n2_single_witness(self):
        battery = witness_battery(ghz(2), FAST)
        assert len(battery) == 1
        assert battery[0].family == (2,)


class TestOptimizerConfig:
    def test_defaults(self):
        cfg = OptimizerConfig()
        assert cfg.n_starts == 64
        assert cfg.max_iterations == 500
        assert cfg.convergence_tol == 1e-10
        assert cfg.seed == 0

    def test_validation(self):
        with pytest.raises(DomainError):
            OptimizerConfig(n_starts=0)
        with pytest.raises(DomainError):
            OptimizerConfig(convergence_tol=0.0)
        with pytest.raises(DomainError):
            OptimizerConfig(method="annealing")
