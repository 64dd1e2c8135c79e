import pytest

from src.cli import main


@pytest.mark.slow
@pytest.mark.parametrize("scenario_id", ["s51", "s52", "s53"])
def test_reproduce_passes(service, rng, scenario_id):
    report = service.reproduce(scenario_id, rng)
    failures = [(c.name, c.residual, c.location) for c in report.failures()]
    assert report.overall, failures
    assert any(c.name.startswith("battery.") for c in report.checks)


@pytest.mark.slow
def test_reproduce_command(capsys):
    assert main(["--seed", "3", "reproduce", "s52"]) == 0
    out = capsys.readouterr().out
    assert "s52:" in out and "checks passed" in out
