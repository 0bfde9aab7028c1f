import pytest

from src import Settings
from src.selftest import Check, SelftestReport, manufactured_checks, umbilic_checks
from src.verify import SuiteReport, SuiteResult


def test_umbilic_instance_passes(logger):
    checks = umbilic_checks(Settings.get("selftest"), logger)
    names = {check.name for check in checks}
    assert {"converged", "max_abs_u_minus_c", "newton_iterations", "gradient_mp", "u_below_both_barriers"} <= names
    assert all(check.passed for check in checks), [check.to_dict() for check in checks if not check.passed]


def test_report_aggregation():
    suites = SuiteReport(7, [SuiteResult("concavity", 3, 2, 0, 10, 0.1, True)])
    passing = SelftestReport(7, suites, [Check("umbilic", "converged", 1.0, True)])
    assert passing.passed
    assert passing.table().endswith("PASSED")
    failing = SelftestReport(7, suites, [Check("umbilic", "converged", 0.0, False)])
    assert not failing.passed
    assert "FAIL" in failing.table()
    assert failing.to_dict()["instances"][0]["passed"] is False


@pytest.mark.slow
def test_manufactured_instance_on_small_grids(logger):
    settings = dict(Settings.get("selftest"), levels=[[16, 32], [32, 64]], **{"max-ratio-change": 0.5})
    checks = manufactured_checks(settings, Settings.get("estimates")["s-sweep"], logger)
    by_name = {check.name: check for check in checks if check.name != "min_iterate_spacelike"}
    assert by_name["converged"].passed
    assert by_name["barriers_converged"].passed
    assert by_name["u_below_s_plus"].passed
    assert by_name["u_below_s_minus"].passed
    assert by_name["max_abs_s_plus_minus_u"].passed
    assert by_name["convergence_order"].value >= 1.7
    assert by_name["ellipticity_min"].passed
