import json

import numpy as np
import pytest

from src.cli.artifacts import load_build, load_config, load_report, write_build
from src.core.errors import ArtifactError, ConstraintViolated

CUSTOM_WELL = {
    "id": "custom",
    "custom": {
        "n": 1,
        "entries": [{"phi": [[{"c": 0.5, "k": 1}, {"c": 0.5, "k": -1}]], "lam": -1, "name": "ch"}],
    },
}


@pytest.fixture
def s52_run(service, s52_generic):
    run = service.build(s52_generic)
    return run, service.verify(run)


def test_round_trip_is_byte_identical(tmp_path, s52_run):
    run, report = s52_run
    first = write_build(tmp_path / "a", run, report)
    reloaded = load_build(tmp_path / "a")
    second = write_build(tmp_path / "b", reloaded, load_report(tmp_path / "a"))
    assert [p.name for p in first] == [p.name for p in second]
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name


def test_reloaded_build_still_verifies(tmp_path, s52_run, service):
    run, report = s52_run
    write_build(tmp_path, run, report)
    assert service.verifier.run_all(load_build(tmp_path).build).overall


def test_missing_artifacts(tmp_path):
    with pytest.raises(ArtifactError):
        load_build(tmp_path)
    with pytest.raises(ArtifactError):
        load_build(tmp_path / "nowhere")


def test_corrupt_artifact(tmp_path, s52_run):
    run, report = s52_run
    write_build(tmp_path, run, report)
    (tmp_path / "operator.json").write_text("{\"order\": 1")
    with pytest.raises(ArtifactError, match="invalid JSON"):
        load_build(tmp_path)


class TestLoadConfig:
    def test_malformed_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{\"id\": \"s52\",")
        with pytest.raises(ConstraintViolated, match="invalid JSON"):
            load_config(path)

    def test_schema_violation(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"id": "s52", "constants": {"k": 1.0, "C5": 0.5}}))
        with pytest.raises(ConstraintViolated, match="C5"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ArtifactError):
            load_config(tmp_path / "absent.json")

    def test_custom_set(self, tmp_path, service, grid):
        path = tmp_path / "well.json"
        path.write_text(json.dumps(CUSTOM_WELL))
        run = service.build(load_config(path))
        values = run.build.h_minus.potential.evaluate(grid)[0, 0]
        assert np.allclose(values, -2 / np.cosh(grid) ** 2)
