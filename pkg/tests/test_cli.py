import json
import subprocess
import sys

import numpy as np
import pytest


def run_cli(*args, check=False):
    proc = subprocess.run([sys.executable, "-m", "avq.cli", *args],
                          capture_output=True, text=True)
    if check:
        assert proc.returncode == 0, proc.stderr
    return proc


class TestSpinCommand:
    def test_check_report(self):
        proc = run_cli("spin", "--r", "1", "--check", check=True)
        report = json.loads(proc.stdout)
        assert report["two_r"] == 2 and report["dim"] == 3
        assert report["check"]["commutation_residual"] < 1e-12
        assert report["check"]["casimir_residual"] < 1e-10
        assert report["check"]["full_turn_sign"] == 1.0

    def test_half_integer_sign(self):
        proc = run_cli("spin", "--r", "1/2", "--check", check=True)
        report = json.loads(proc.stdout)
        assert report["check"]["full_turn_sign"] == -1.0
        assert report["check"]["full_turn_residual"] < 1e-10

    def test_component_spectrum(self):
        proc = run_cli("spin", "--r", "1", "--component", "1,0,0", check=True)
        report = json.loads(proc.stdout)
        assert np.allclose(report["component_eigenvalues"], [-1.0, 0.0, 1.0],
                           atol=1e-9)

    def test_plain_format(self):
        proc = run_cli("spin", "--r", "1/2", "--format", "plain", check=True)
        assert "two_r: 1" in proc.stdout


class TestBornCommand:
    def test_transition(self):
        proc = run_cli("born", "--a", "0,0,1", "--b", "0,0,1", check=True)
        report = json.loads(proc.stdout)
        assert report["transition"]["closed_form"] == 1.0

    def test_crossval_requires_seed(self):
        proc = run_cli("born", "--crossval", "10")
        assert proc.returncode == 2

    def test_crossval(self):
        proc = run_cli("born", "--crossval", "20", "--seed", "3", check=True)
        report = json.loads(proc.stdout)
        assert report["crossval"]["max_deviation"] < 1e-10


class TestChshCommand:
    def test_bounds(self):
        proc = run_cli("chsh", "--classical-max", "--quantum-max",
                       "--resolution", "5", check=True)
        report = json.loads(proc.stdout)
        assert report["classical_max"] == 2
        assert abs(report["quantum_max"]["abs_s"] - 2 * np.sqrt(2)) < 0.01

    def test_simulation_and_csv(self, tmp_path):
        out = tmp_path / "log.csv"
        proc = run_cli("chsh", "--angles", "0,90,45,135", "--n", "500",
                       "--seed", "11", "--format", "csv", "--out", str(out),
                       check=True)
        report = json.loads(proc.stdout)
        assert report["simulation"]["n_trials"] == 500
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 501

    def test_missing_n(self):
        proc = run_cli("chsh", "--angles", "0,90,45,135", "--seed", "1")
        assert proc.returncode == 2


class TestMedicalCommand:
    def test_report(self):
        proc = run_cli("medical", "--n", "50000", "--seed", "2", check=True)
        report = json.loads(proc.stdout)
        assert report["quantum"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert report["paper_reported"] == 0.43
        assert abs(report["bayes_mc"] - report["bayes_closed"]) < \
            3 * report["mc_se"]

    def test_too_few_samples_is_domain_error(self):
        proc = run_cli("medical", "--n", "10", "--seed", "2")
        assert proc.returncode == 1
        assert "ValueError" in proc.stderr


class TestMeasureCommand:
    def test_random_check(self):
        proc = run_cli("measure", "--random-check", "10", "--seed", "4",
                       check=True)
        report = json.loads(proc.stdout)["random_check"]
        assert report["povm_completeness_residual"] < 1e-10
        assert report["kraus_probability_residual"] < 1e-10
        assert report["kraus_vs_bayes_residual"] < 1e-12

    def test_model_files(self, tmp_path):
        model = {"parameters": [0.0, 1.0], "samples": [0, 1],
                 "likelihood": [[0.8, 0.2], [0.2, 0.8]]}
        eye = np.eye(2)
        variable = {"name": "v", "values": [0.0, 1.0],
                    "projectors": [
                        {"dim": 2, "re": np.outer(e, e).ravel().tolist(),
                         "im": [0.0] * 4} for e in eye]}
        state = {"dim": 2, "re": [0.5, 0.0, 0.0, 0.5], "im": [0.0] * 4}
        mp, vp, sp = (tmp_path / n for n in ("m.json", "v.json", "s.json"))
        mp.write_text(json.dumps(model))
        vp.write_text(json.dumps(variable))
        sp.write_text(json.dumps(state))
        proc = run_cli("measure", "--model", str(mp), "--variable", str(vp),
                       "--state", str(sp), check=True)
        report = json.loads(proc.stdout)["povm"]
        assert len(report["effects"]) == 2
        assert report["data_probabilities"]["0"] == pytest.approx(0.5)

    def test_value_mismatch_is_domain_error(self, tmp_path):
        model = {"parameters": [5.0, 6.0], "samples": [0, 1],
                 "likelihood": [[0.8, 0.2], [0.2, 0.8]]}
        eye = np.eye(2)
        variable = {"name": "v", "values": [0.0, 1.0],
                    "projectors": [
                        {"dim": 2, "re": np.outer(e, e).ravel().tolist(),
                         "im": [0.0] * 4} for e in eye]}
        mp, vp = tmp_path / "m.json", tmp_path / "v.json"
        mp.write_text(json.dumps(model))
        vp.write_text(json.dumps(variable))
        proc = run_cli("measure", "--model", str(mp), "--variable", str(vp))
        assert proc.returncode == 1
        assert "ValueMismatch" in proc.stderr


class TestInferenceCommand:
    def test_prop2(self):
        proc = run_cli("inference", "--op", "prop2", "--c1", "-1.96",
                       "--c2", "1.96", "--n", "50000", "--seed", "6",
                       check=True)
        report = json.loads(proc.stdout)["prop2"]
        assert report["analytic"] == pytest.approx(0.95, abs=1e-3)
        assert abs(report["credibility"] - report["analytic"]) < \
            3 * report["se_credibility"]

    def test_requires_seed(self):
        proc = run_cli("inference", "--op", "prop2", "--c1", "-1",
                       "--c2", "1", "--n", "100")
        assert proc.returncode == 2


class TestConfigFile:
    def test_config_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 20000, "seed": 2}))
        proc = run_cli("medical", "--config", str(cfg), check=True)
        direct = run_cli("medical", "--n", "20000", "--seed", "2", check=True)
        assert proc.stdout == direct.stdout

    def test_flags_win(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 20000, "seed": 2}))
        proc = run_cli("medical", "--config", str(cfg), "--seed", "3",
                       check=True)
        other = run_cli("medical", "--n", "20000", "--seed", "3", check=True)
        assert proc.stdout == other.stdout


class TestExitCodes:
    def test_unknown_flag(self):
        proc = run_cli("spin", "--r", "1", "--bogus")
        assert proc.returncode == 2

    def test_unknown_subcommand(self):
        proc = run_cli("frobnicate")
        assert proc.returncode == 2


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ("chsh", "--angles", "0,90,45,135", "--n", "2000", "--seed", "13"),
        ("medical", "--n", "20000", "--seed", "13"),
        ("inference", "--op", "prop2", "--c1", "-1", "--c2", "1",
         "--n", "20000", "--seed", "13"),
        ("measure", "--random-check", "10", "--seed", "13"),
        ("born", "--crossval", "20", "--seed", "13"),
    ])
    def test_byte_identical_reruns(self, args):
        p1 = run_cli(*args, check=True)
        p2 = run_cli(*args, check=True)
        assert p1.stdout == p2.stdout
