"""
The acceptance self-test: the randomized algebraic suites plus the umbilic
and manufactured instances, each reduced to named pass/fail checks.
"""

import math
from typing import Optional

import numpy as np
from loguru import logger as _default_logger

from .logging import Logger
from .numerics.discretize import build_grid
from .numerics.solver import SolveConfig, SolveReport, barrier_pair, homotopy_solve, refinement_study
from .problem.boundary import BoundaryData
from .problem.manufactured import ManufacturedSolution
from .problem.psispec import PsiFamily, PsiSpec
from .settings import Settings
from .verify.estimates import curvature_ratio, estimate_report
from .verify.suites import SuiteReport, algebraic_suites

UMBILIC_TOLERANCE = 1e-10


class Check:
    """
    Represents one named acceptance check of an instance.
    """

    __slots__ = ("instance", "name", "value", "passed")

    def __init__(self, instance: str, name: str, value: float, passed: bool) -> None:
        self.instance = instance
        self.name = name
        self.value = value
        self.passed = bool(passed)

    def to_dict(self) -> dict:
        return {"instance": self.instance, "name": self.name, "value": self.value, "passed": self.passed}


class SelftestReport:
    """
    Represents the outcome of the self-test.
    """

    __slots__ = ("seed", "suites", "checks")

    def __init__(self, seed: int, suites: SuiteReport, checks: list[Check]) -> None:
        self.seed = seed
        self.suites = suites
        self.checks = checks

    @property
    def passed(self) -> bool:
        return self.suites.passed and all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "suites": self.suites.to_dict(),
            "instances": [check.to_dict() for check in self.checks],
        }

    def table(self) -> str:
        lines = [self.suites.table(), "", f"{'instance':<14} {'check':<28} {'value':>14}  status"]
        for check in self.checks:
            lines.append(
                f"{check.instance:<14} {check.name:<28} {check.value:>14.6e}  {'ok' if check.passed else 'FAIL'}"
            )
        lines.append("")
        lines.append("PASSED" if self.passed else "FAILED")
        return "\n".join(lines)


def _margin_checks(instance: str, report: SolveReport) -> list[Check]:
    margins = report.iterate_margins
    return [
        Check(instance, f"min_iterate_{name}", margins[name], margins[name] > 0)
        for name in ("spacelike", "sigma1", "sigma2")
    ]


def umbilic_checks(settings: dict, logger: Logger) -> list[Check]:
    """
    φ ≡ c, ψ ≡ 1/c²: the solver must return u ≡ c at once.
    """
    n_rho, n_theta = settings["umbilic-grid"]
    c = settings["umbilic-b"]
    grid = build_grid(settings["radius"], n_rho, n_theta)
    cfg = SolveConfig(grid, PsiSpec(PsiFamily.CONSTANT, h=settings["umbilic-psi"]), BoundaryData.constant(c))
    report = homotopy_solve(cfg, logger)
    deviation = float(np.max(np.abs(report.u.full - c)))
    checks = [
        Check("umbilic", "converged", float(report.converged), report.converged),
        Check("umbilic", "max_abs_u_minus_c", deviation, deviation <= UMBILIC_TOLERANCE),
        Check(
            "umbilic",
            "newton_iterations",
            float(report.total_newton_iterations),
            report.total_newton_iterations <= settings["max-umbilic-iterations"],
        ),
    ]
    checks.extend(_margin_checks("umbilic", report))
    if report.converged:
        barriers = barrier_pair(cfg, logger)
        estimates = estimate_report(report, barriers)
        checks.append(Check("umbilic", "gradient_mp", float(estimates.gradient_mp_holds), estimates.gradient_mp_holds))
        gaps = estimates.barrier_gaps
        gap = min(gaps.min_s_plus_minus_u, gaps.min_s_minus_minus_u)
        checks.append(Check("umbilic", "u_below_both_barriers", gap, gaps.holds))
    return checks


def manufactured_checks(settings: dict, sweep, logger: Logger) -> list[Check]:
    """
    u* = base + amplitude·√(1+|y|²) over the refinement levels: observed order,
    barrier checks on the finest grid, gradient maximum principle and the
    stability of the curvature ratio between the two finest grids.
    """
    solution = ManufacturedSolution()
    levels = [tuple(level) for level in settings["levels"]]
    template = build_grid(settings["radius"], *levels[0])
    cfg = SolveConfig(template, solution.psi(template), solution.boundary())
    study = refinement_study(cfg, levels, solution, logger)
    checks = [Check("manufactured", "converged", float(study.converged), study.converged)]
    if not study.converged:
        return checks

    order = study.orders[-1]
    checks.append(Check("manufactured", "convergence_order", order, order >= settings["min-order"]))
    for report in study.reports:
        checks.extend(_margin_checks("manufactured", report))

    finest = study.reports[-1]
    barriers = barrier_pair(finest.config, logger)
    checks.append(Check("manufactured", "barriers_converged", float(barriers.converged), barriers.converged))
    if barriers.converged:
        estimates = estimate_report(finest, barriers, sweep=sweep)
        gaps = estimates.barrier_gaps
        checks.append(Check("manufactured", "u_below_s_plus", gaps.min_s_plus_minus_u, gaps.u_below_s_plus))
        checks.append(Check("manufactured", "u_below_s_minus", gaps.min_s_minus_minus_u, gaps.u_below_s_minus))
        checks.append(
            Check(
                "manufactured",
                "max_abs_s_plus_minus_u",
                gaps.max_abs_s_plus_minus_u,
                gaps.max_abs_s_plus_minus_u <= gaps.tolerance,
            )
        )
        checks.append(
            Check("manufactured", "gradient_mp", float(estimates.gradient_mp_holds), estimates.gradient_mp_holds)
        )
        checks.append(
            Check("manufactured", "ellipticity_min", estimates.ellipticity_min, estimates.ellipticity_min > 0)
        )

    coarse, fine = (curvature_ratio(report).ratio for report in study.reports[-2:])
    change = abs(fine - coarse) / abs(fine) if fine else math.inf
    checks.append(Check("manufactured", "curvature_ratio_change", change, change <= settings["max-ratio-change"]))
    return checks


def selftest(seed: Optional[int] = None, threads: int = 1, logger: Logger = None) -> SelftestReport:
    """
    Run the algebraic suites and the acceptance instances.

    :param seed: The suite seed; the ``[selftest]`` default if None.
    :type seed: Optional[int]
    :param threads: Worker threads for the suites.
    :type threads: int
    :rtype: SelftestReport
    """
    logger = logger or _default_logger
    settings = Settings.get("selftest")
    suite_settings = dict(Settings.get("suites"))
    triples = [tuple(triple) for triple in suite_settings.pop("triples")]
    suite_settings.pop("threads", None)
    sweep = Settings.get("estimates")["s-sweep"]
    seed = settings["seed"] if seed is None else seed

    logger.info(f"Running the algebraic suites with seed {seed}")
    suites = algebraic_suites(seed, suite_settings, triples, threads, logger)
    logger.info("Running the umbilic instance")
    checks = umbilic_checks(settings, logger)
    logger.info("Running the manufactured instance")
    checks.extend(manufactured_checks(settings, sweep, logger))
    return SelftestReport(seed, suites, checks)
