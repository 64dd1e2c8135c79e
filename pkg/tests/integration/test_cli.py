import io
import json

import numpy as np
import pandas as pd
import pytest

from src.cli import main
from src.scenarios import ScenarioService
from src.verify import Check, VerificationReport
from tests.conftest import K1, K2, X0
from tests.unit.test_artifacts import CUSTOM_WELL

# Both components of each function are proportional, so W vanishes identically
W_DEGENERATE_S52 = {"id": "s52", "constants": {"k": 1.0, "C2": 0.5, "C3": 0.5, "C4": 0.25,
                                               "C6": 0.5, "C7": 0.0, "C8": 0.25}}


@pytest.fixture
def write_config(tmp_path):
    def write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)
    return write


class TestExitCodes:
    def test_unknown_reproduce_target(self, capsys):
        assert main(["reproduce", "s99"]) == 2
        assert "UnknownScenario" in capsys.readouterr().err

    def test_verify_empty_directory(self, tmp_path):
        assert main(["verify", str(tmp_path)]) == 2

    def test_malformed_config(self, write_config, tmp_path, capsys):
        path = write_config("{\"id\": ")
        assert main(["build", "--config", path, "--out", str(tmp_path / "out")]) == 2
        assert "ConstraintViolated" in capsys.readouterr().err

    def test_bad_grid(self, tmp_path):
        assert main(["--grid", "5:-5:10", "build", "--scenario", "s52-generic",
                     "--out", str(tmp_path)]) == 2

    def test_degenerate_wronskian(self, write_config, tmp_path, capsys):
        path = write_config(W_DEGENERATE_S52)
        assert main(["build", "--config", path, "--out", str(tmp_path / "out")]) == 3
        assert "DegenerateWronskian" in capsys.readouterr().err

    def test_verification_failure(self, mocker, write_config, tmp_path):
        mocker.patch.object(ScenarioService, "verify",
                            return_value=VerificationReport([Check("forced", False, 1.0)]))
        path = write_config(CUSTOM_WELL)
        assert main(["build", "--config", path, "--out", str(tmp_path / "out")]) == 4


class TestCustomSet:
    def test_build_and_export(self, write_config, tmp_path, capsys):
        path = write_config(CUSTOM_WELL)
        out = tmp_path / "well"
        assert main(["build", "--config", path, "--out", str(out)]) == 0
        assert {p.name for p in out.iterdir()} >= {"config.json", "set.json", "operator.json",
                                                  "hamiltonians.json", "u0.json", "report.json"}
        capsys.readouterr()
        assert main(["--grid=-3:3:61", "export", str(out), "Vminus"]) == 0
        table = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert list(table.columns) == ["x", "V[0][0].re", "V[0][0].im"]
        assert np.allclose(table["V[0][0].re"], -2 / np.cosh(table["x"]) ** 2)

    def test_verify_prints_report(self, write_config, tmp_path, capsys):
        out = tmp_path / "well"
        assert main(["build", "--config", write_config(CUSTOM_WELL), "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["verify", str(out)]) == 0
        report = VerificationReport.from_dict(json.loads(capsys.readouterr().out))
        assert report.overall

    def test_unknown_quantity(self, write_config, tmp_path):
        out = tmp_path / "well"
        main(["build", "--config", write_config(CUSTOM_WELL), "--out", str(out)])
        assert main(["export", str(out), "Vzero"]) == 2

    def test_invert(self, write_config, capsys):
        assert main(["invert", "--config", write_config(CUSTOM_WELL)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["admissibility"]["verdict"] == "pass"
        assert "Vplus" in data


@pytest.mark.slow
class TestBundledScenarios:
    def test_s51_case1(self, tmp_path, capsys):
        out = tmp_path / "s51"
        assert main(["build", "--scenario", "s51-case1", "--k1", str(K1), "--k2", str(K2),
                     "--x0", str(X0), "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["--grid=-5:5:201", "export", str(out), "Vminus"]) == 0
        table = pd.read_csv(io.StringIO(capsys.readouterr().out))
        x = table["x"].to_numpy()
        assert np.allclose(table["V[0][0].re"], -2 * K1 ** 2 / np.cosh(K1 * x) ** 2, atol=1e-9)
        assert np.allclose(table["V[1][1].re"], -2 * K2 ** 2 / np.cosh(K2 * (x - X0)) ** 2,
                           atol=1e-9)

    def test_s52_u0_export(self, tmp_path, capsys):
        out = tmp_path / "s52"
        assert main(["build", "--scenario", "s52-generic", "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["export", str(out), "U0"]) == 0
        table = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert np.allclose(table["U0[0][0].re"], -1.0)
        assert np.allclose(table["U0[0][1].re"], 0.0)
        assert np.allclose(table["U0[1][0].re"], 0.0)
        assert np.allclose(table["U0[1][1].re"], -1.0)


class TestArtifactsAndInversion:
    def test_invert_reports_pole(self, write_config, capsys):
        odd = {"id": "custom", "custom": {"n": 1, "entries": [
            {"phi": [[{"c": 0.5, "k": 1}, {"c": -0.5, "k": -1}]], "lam": -1, "name": "sh"}]}}
        assert main(["invert", "--config", write_config(odd)]) == 3
        assert "VanishingWronskian" in capsys.readouterr().err

    def test_edited_coefficient_fails_intertwining(self, write_config, tmp_path, capsys):
        out = tmp_path / "well"
        assert main(["build", "--config", write_config(CUSTOM_WELL), "--out", str(out)]) == 0
        operator = json.loads((out / "operator.json").read_text())
        term = operator["lower"][0]["num"][0][0][0]
        if isinstance(term["c"], list):
            term["c"][0] += 0.01
        else:
            term["c"] += 0.01
        (out / "operator.json").write_text(json.dumps(operator))
        capsys.readouterr()
        assert main(["verify", str(out)]) == 4
        captured = capsys.readouterr()
        report = VerificationReport.from_dict(json.loads(captured.out))
        assert not report.get("intertwining.operator").exact
        assert not report.get("intertwining.probes").exact
        assert "Checks changed since build" in captured.err
        assert "intertwining.operator" in captured.err

    def test_reports_are_deterministic(self, write_config, tmp_path):
        path = write_config(CUSTOM_WELL)
        main(["--seed", "5", "build", "--config", path, "--out", str(tmp_path / "a")])
        main(["--seed", "5", "build", "--config", path, "--out", str(tmp_path / "b")])
        for name in ("report.json", "operator.json", "hamiltonians.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
