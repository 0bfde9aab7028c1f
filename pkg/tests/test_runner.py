import pytest

from src import Config, ConfigError, WriterError
from src.output import BaseWriter
from src.runner import EXIT_CHECKS, EXIT_NONCONVERGED, EXIT_OK, Runner

UMBILIC = """
[grid]
n-rho = 16
n-theta = 32
[psi]
h = [0.25]
"""

POWER = """
[grid]
n-rho = 16
n-theta = 32
[psi]
family = "power_theta"
p = 2.5
h = [0.044, 0.005]
[boundary]
a = [0.05, 0.0, 0.0]
[solver]
homotopy-steps = 8
"""


def test_umbilic_run_passes(logger):
    runner = Runner(Config.from_string(UMBILIC), logger)
    result = runner.run()
    assert result.exit_code == EXIT_OK
    assert result.barriers is not None and result.barriers.converged
    assert result.estimates.holds
    assert result.structural is None
    data = result.to_dict()
    assert data["config"]["grid"]["n-rho"] == 16
    assert data["refinement"] is None


def test_power_theta_run_checks_the_structural_conditions(logger):
    result = Runner(Config.from_string(POWER + "[verify]\nbarriers = false\n"), logger).run()
    assert result.report.converged
    assert result.exit_code in (EXIT_OK, EXIT_CHECKS)
    assert result.barriers is None
    assert result.structural is not None
    assert result.structural.holds
    assert result.to_dict()["estimates"]["structural_margins"]["condition_holds"]


def test_non_convergence_exits_with_two(logger):
    text = POWER.replace("homotopy-steps = 8", "homotopy-steps = 1\nmax-newton = 1\nmin-t-step = 0.5")
    result = Runner(Config.from_string(text), logger).run()
    assert result.exit_code == EXIT_NONCONVERGED
    assert result.estimates is None
    assert result.to_dict()["solve"]["converged"] is False


def test_mean_curvature_run_skips_the_barriers(logger):
    text = UMBILIC.replace("h = [0.25]", "h = [1.0]") + "[equation]\nk = 1\n"
    result = Runner(Config.from_string(text), logger).run()
    assert result.exit_code == EXIT_OK
    assert result.barriers is None


def test_invalid_boundary_data_is_a_configuration_error(logger):
    runner = Runner(Config.from_string("[boundary]\nb = 0.01\na = [1.0, 0.0, 0.0]\n"), logger)
    with pytest.raises(ConfigError):
        runner.solve_config()


def test_solve_config_follows_the_configuration(logger):
    cfg = Runner(Config.from_string(POWER + "damping = 0.25\n"), logger).solve_config()
    assert cfg.grid.shape == (16, 32)
    assert cfg.damping == 0.25
    assert cfg.homotopy_steps == 8
    assert cfg.psi.p == 2.5


@pytest.mark.slow
def test_failed_order_check_exits_with_three(logger):
    text = """
[grid]
n-rho = 16
n-theta = 32
[manufactured]
enable = true
levels = [[8, 16], [16, 32]]
[verify]
min-order = 10.0
"""
    runner = Runner(Config.from_string(text), logger)
    result = runner.run()
    assert result.refinement is not None
    assert result.refinement.levels == [(8, 16), (16, 32)]
    assert result.exit_code == EXIT_CHECKS
    # the report on the configured grid is reused from the study
    assert result.report is result.refinement.reports[-1]


def test_writers_receive_the_run(tmp_path, logger):
    runner = Runner(Config.from_string(UMBILIC), logger)
    runner.load_writers("writers")
    paths = runner.write(runner.run(), tmp_path / "out")
    assert sorted(path.name for path in paths) == ["report.json", "solution.csv"]


class _FailingWriter(BaseWriter):
    filename = "broken.txt"

    def write(self, result, out_dir):
        (out_dir / self.filename).write_text("partial", encoding="utf-8")
        raise WriterError("disk full")


def test_failed_writer_leaves_no_output(tmp_path, logger):
    runner = Runner(Config.from_string(UMBILIC), logger)
    runner.load_writers("writers")
    runner.writers.append(_FailingWriter())
    result = runner.run()
    out = tmp_path / "out"
    with pytest.raises(WriterError):
        runner.write(result, out)
    assert not out.exists()

    existing = tmp_path / "existing"
    existing.mkdir()
    (existing / "notes.txt").write_text("keep", encoding="utf-8")
    with pytest.raises(WriterError):
        runner.write(result, existing)
    assert sorted(path.name for path in existing.iterdir()) == ["notes.txt"]
