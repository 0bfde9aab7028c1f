import json

import pytest
from click.testing import CliRunner

import src.selftest
from main import cli
from src import WriterError
from src.selftest import Check, SelftestReport
from src.utils import THREADS_ENV
from src.verify import SuiteReport, SuiteResult
from writers.solution_csv.writer import SolutionCsvWriter

UMBILIC = """
[grid]
n-rho = 16
n-theta = 32
[psi]
h = [0.25]
"""


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_solve_writes_both_files(runner, tmp_path):
    config = tmp_path / "config.toml"
    config.write_text(UMBILIC, encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(cli, ["solve", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 0, result.stderr
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["exit_code"] == 0
    assert report["solve"]["total_newton_iterations"] <= 2
    lines = (out / "solution.csv").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 + 1 + 16 * 32
    assert all(abs(float(line.split(",")[4]) - 2.0) <= 1e-10 for line in lines[1:])


def test_malformed_config_writes_nothing(runner, tmp_path):
    config = tmp_path / "config.toml"
    config.write_text("[grid\nn-rho = 16", encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(cli, ["solve", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 1
    assert "Configuration error" in result.stderr
    assert not out.exists()


def test_invalid_problem_writes_nothing(runner, tmp_path):
    config = tmp_path / "config.toml"
    config.write_text("[boundary]\nb = 0.01\na = [1.0, 0.0, 0.0]\n", encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(cli, ["solve", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 1
    assert not out.exists()


def test_suites_command(runner, monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "2")
    result = runner.invoke(cli, ["suites", "--n", "3", "--k", "2", "--l", "0", "--samples", "300"])
    assert result.exit_code in (0, 3)
    assert "sigma_oracle" in result.stdout
    assert "concavity" in result.stdout


def test_suites_rejects_invalid_orders(runner):
    result = runner.invoke(cli, ["suites", "--n", "2", "--k", "3", "--l", "0"])
    assert result.exit_code == 1


def test_invalid_thread_count(runner, monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "zero")
    result = runner.invoke(cli, ["suites", "--n", "3", "--k", "2", "--l", "0", "--samples", "10"])
    assert result.exit_code == 1


def _fake_report(passed):
    suites = SuiteReport(7, [SuiteResult("ellipticity", 3, 2, 0, 10, 0.5, True)])
    return SelftestReport(7, suites, [Check("umbilic", "converged", 1.0, passed)])


@pytest.mark.parametrize("passed, code", [(True, 0), (False, 3)])
def test_selftest_exit_codes(runner, monkeypatch, tmp_path, passed, code):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    monkeypatch.setattr(src.selftest, "selftest", lambda seed, threads, logger: _fake_report(passed))
    result = runner.invoke(cli, ["selftest", "--out", str(tmp_path)])
    assert result.exit_code == code
    assert ("PASSED" if passed else "FAILED") in result.stdout
    data = json.loads((tmp_path / "selftest.json").read_text(encoding="utf-8"))
    assert data["passed"] is passed


def test_writer_failure_removes_partial_output(runner, tmp_path, monkeypatch):
    def fail(self, result, out_dir):
        raise WriterError("disk full")

    monkeypatch.setattr(SolutionCsvWriter, "write", fail)
    config = tmp_path / "config.toml"
    config.write_text(UMBILIC, encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(cli, ["solve", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 1
    assert not (out / "report.json").exists()
    assert not (out / "solution.csv").exists()
    assert not out.exists() or not any(path.name.startswith(".staging-") for path in out.iterdir())
