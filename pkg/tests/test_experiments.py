import csv
from fractions import Fraction

import numpy as np
import pytest

from avq import experiments


class TestPlaneDirection:
    def test_cardinal_angles(self):
        assert np.allclose(experiments.plane_direction(0.0), [0, 0, 1])
        assert np.allclose(experiments.plane_direction(np.pi / 2), [1, 0, 0],
                           atol=1e-12)


class TestChshSimulate:
    def test_all_zero_angles(self):
        cfg = experiments.ChshConfig(0.0, 0.0, 0.0, 0.0, 20000, 5)
        run = experiments.chsh_simulate(cfg)
        for est, count in run.correlations.values():
            assert count > 0
            assert est == pytest.approx(-1.0)
        assert run.s_statistic == pytest.approx(-2.0)

    def test_single_trial(self):
        cfg = experiments.ChshConfig(0.0, np.pi / 2, np.pi / 4,
                                     3 * np.pi / 4, 1, 9)
        run = experiments.chsh_simulate(cfg)
        assert len(run.correlations) == 1
        assert run.s_statistic is None

    def test_matches_exact_within_error(self):
        g = np.random.default_rng(55)
        for k in range(3):
            angles = g.uniform(0, 2 * np.pi, size=4)
            cfg = experiments.ChshConfig(*angles, n_trials=40000, seed=100 + k)
            run = experiments.chsh_simulate(cfg)
            exact = experiments.chsh_exact_s(cfg)
            var = 0.0
            for (la, lb), (ang_a, ang_b) in cfg.angles().items():
                est, count = run.correlations[(la, lb)]
                e = -np.cos(ang_a - ang_b)
                var += (1.0 - e * e) / count
            assert abs(run.s_statistic - exact) < 3 * np.sqrt(var) + 1e-9

    def test_determinism(self):
        cfg = experiments.ChshConfig(0.0, 1.0, 2.0, 3.0, 5000, 77)
        r1 = experiments.chsh_simulate(cfg)
        r2 = experiments.chsh_simulate(cfg)
        assert np.array_equal(r1.outcome_a, r2.outcome_a)
        assert np.array_equal(r1.outcome_b, r2.outcome_b)
        assert r1.s_statistic == r2.s_statistic

    def test_csv_log(self, tmp_path):
        cfg = experiments.ChshConfig(0.0, 1.0, 2.0, 3.0, 50, 3)
        run = experiments.chsh_simulate(cfg)
        path = tmp_path / "trials.csv"
        run.write_csv(path)
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["trial", "setting_a", "setting_b",
                           "outcome_a", "outcome_b"]
        assert len(rows) == 51
        assert rows[1][1] in ("a", "a'")
        assert int(rows[1][3]) in (1, -1)

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            experiments.ChshConfig(0.0, 0.0, 0.0, 0.0, 0, 1)


class TestChshClassical:
    def test_max_is_two(self):
        assert experiments.chsh_classical_max() == 2

    def test_enumeration(self):
        values = experiments.classical_statistic_values()
        assert len(values) == 16
        assert max(values) == 2 and min(values) == -2

    def test_all_plus_assignment(self):
        assert 1 * 1 + 1 * 1 + 1 * 1 - 1 * 1 == 2


class TestChshQuantumMax:
    def test_coarse_grid(self):
        _, s = experiments.chsh_quantum_max(5.0)
        assert abs(abs(s) - 2.0 * np.sqrt(2.0)) < 0.01

    def test_fine_grid(self):
        angles, s = experiments.chsh_quantum_max(1.0)
        assert abs(abs(s) - 2.0 * np.sqrt(2.0)) < 0.001
        assert angles[0] == 0.0

    def test_rejects_coarse_resolution(self):
        with pytest.raises(ValueError):
            experiments.chsh_quantum_max(10.0)

    def test_equal_angles_give_two(self):
        cfg = experiments.ChshConfig(1.0, 1.0, 1.0, 1.0, 1, 1)
        assert experiments.chsh_exact_s(cfg) == pytest.approx(-2.0)


class TestMedicalContrasts:
    def test_exact_covariance(self):
        cov, rho = experiments.medical_contrasts()
        assert cov[0][0] == Fraction(4, 3)
        assert cov[1][1] == Fraction(4, 3)
        assert cov[0][1] == Fraction(-4, 9)
        assert rho == Fraction(-1, 3)

    def test_zeta_values(self):
        za, zb = experiments.zeta_contrasts([3.0, 0.0, 0.0, 0.0])
        assert za == pytest.approx(3.0)
        assert zb == pytest.approx(-1.0)


class TestPsiTransform:
    def test_ones_vector(self):
        assert np.allclose(experiments.psi_transform([1, 1, 1, 1]),
                           [2.0, 0.0, 0.0, 0.0])

    def test_zero_vector(self):
        assert np.allclose(experiments.psi_transform([0, 0, 0, 0]), 0.0)

    def test_norm_preserving(self):
        g = np.random.default_rng(4)
        mu = g.normal(size=4)
        psi = experiments.psi_transform(mu)
        assert np.linalg.norm(psi) == pytest.approx(np.linalg.norm(mu), abs=1e-12)

    def test_orthogonal_in_rationals(self):
        m = experiments.PSI_MATRIX
        for i in range(4):
            for j in range(4):
                dot = sum(m[i][k] * m[j][k] for k in range(4))
                assert dot == (1 if i == j else 0)

    def test_zeta_identities(self):
        g = np.random.default_rng(8)
        for _ in range(10):
            mu = g.normal(size=4)
            za, zb = experiments.zeta_contrasts(mu)
            _, p1, p2, p3 = experiments.psi_transform(mu)
            assert za == pytest.approx(-2.0 / 3.0 * (p1 + p2 + p3), abs=1e-12)
            assert zb == pytest.approx(-2.0 / 3.0 * (p1 - p2 - p3), abs=1e-12)


class TestOrthant:
    def test_independent(self):
        assert experiments.orthant_conditional(0.0) == pytest.approx(0.5)

    def test_medical_rho(self):
        v = experiments.orthant_conditional(-1.0 / 3.0)
        assert v == pytest.approx(0.5 + np.arcsin(-1.0 / 3.0) / np.pi)

    def test_synthetic_rhos_match_mc(self):
        g = np.random.default_rng(12)
        for rho in (-0.8, -0.3, 0.0, 0.4, 0.9):
            n = 200000
            x = g.standard_normal(n)
            y = rho * x + np.sqrt(1 - rho * rho) * g.standard_normal(n)
            cond = x > 0
            p = np.mean(y[cond] > 0)
            se = np.sqrt(p * (1 - p) / cond.sum())
            assert abs(p - experiments.orthant_conditional(rho)) < 3.5 * se


class TestMedicalBayes:
    def test_closed_form_vs_mc(self):
        res = experiments.medical_bayes(200000, 19)
        assert res.closed_form == pytest.approx(
            0.5 + np.arcsin(-1.0 / 3.0) / np.pi)
        assert abs(res.mc_estimate - res.closed_form) < 3 * res.mc_se

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            experiments.medical_bayes(100, 1)


class TestMedicalQuantum:
    def test_exact_third(self):
        closed, abstract = experiments.medical_quantum()
        assert closed == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert abstract == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_direction_geometry(self):
        dot = float(experiments.QUANTUM_DIRECTION_A
                    @ experiments.QUANTUM_DIRECTION_B)
        assert dot == pytest.approx(-1.0 / 3.0, abs=1e-14)

    def test_symmetric_in_roles(self):
        from avq import born
        a = experiments.QUANTUM_DIRECTION_A
        b = experiments.QUANTUM_DIRECTION_B
        assert born.spin_half_transition(b, a, +1) == \
            pytest.approx(1.0 / 3.0, abs=1e-12)


class TestMedicalReport:
    def test_fields(self):
        res = experiments.medical_report(50000, 21)
        d = res.to_dict()
        assert set(d) == {"rho", "bayes_closed", "bayes_mc", "mc_se",
                          "quantum", "paper_reported"}
        assert d["rho"] == pytest.approx(-1.0 / 3.0)
        assert d["quantum"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert d["paper_reported"] == 0.43
        assert 0.0 <= d["bayes_mc"] <= 1.0
