import os
import shutil
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np

from .config import Config
from .errors import ConfigError, DomainError, InvalidBoundaryDataError, WriterError
from .logging import Logger
from .numerics.discretize import boundary_values, build_grid
from .numerics.solver import BarrierPair, RefinementStudy, SolveConfig, SolveReport, barrier_pair, homotopy_solve, refinement_study
from .output.base import BaseWriter, RunResult
from .output.loader import load_writer, load_writers
from .problem.boundary import BoundaryData
from .problem.manufactured import ManufacturedSolution
from .problem.psispec import PsiFamily, PsiSpec, StructuralReport, check_structural_conditions
from .verify.estimates import estimate_report

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NONCONVERGED = 2
EXIT_CHECKS = 3


class Runner:
    """
    Orchestrates one ``solve`` run: the main problem, its barriers, the estimate
    checks and, for manufactured data, the refinement study.
    """

    config: Config
    logger: Logger
    writers: list[BaseWriter]

    def __init__(self, config: Config, logger: Logger) -> None:
        self.config = config
        self.logger = logger
        self.writers = []

    @property
    def manufactured(self) -> Optional[ManufacturedSolution]:
        table = self.config["manufactured"]
        if not table["enable"]:
            return None
        return ManufacturedSolution(table["base"], table["amplitude"])

    def solve_config(self) -> SolveConfig:
        """
        Build the main problem from the configuration.

        :raises ConfigError: If the configured problem is invalid, including
            non-positive boundary data.
        :rtype: SolveConfig
        """
        grid_table = self.config["grid"]
        grid = build_grid(grid_table["radius"], grid_table["n-rho"], grid_table["n-theta"])
        k, l = self.config["equation"]["k"], self.config["equation"]["l"]
        solution = self.manufactured
        try:
            if solution is not None:
                psi = solution.psi(grid, k, l)
                phi = solution.boundary()
            else:
                psi_table = self.config["psi"]
                psi = PsiSpec(psi_table["family"], psi_table["p"], psi_table["h"], k=k, l=l)
                boundary = self.config["boundary"]
                phi = BoundaryData(boundary["b"], boundary["a"] or None)
            boundary_values(phi, grid)
        except (DomainError, InvalidBoundaryDataError) as e:
            raise ConfigError(str(e)) from e
        solver = self.config["solver"]
        return SolveConfig(
            grid,
            psi,
            phi,
            k=k,
            l=l,
            newton_tol=solver["newton-tol"],
            max_newton=solver["max-newton"],
            homotopy_steps=solver["homotopy-steps"],
            damping=solver["damping"],
            min_step=solver["min-step"],
            min_t_step=solver["min-t-step"],
            fd_jacobian_eps=solver["fd-jacobian-eps"],
        )

    def _solve(self, cfg: SolveConfig) -> tuple[SolveReport, Optional[RefinementStudy]]:
        solution = self.manufactured
        if solution is None:
            return homotopy_solve(cfg, self.logger), None
        levels = [tuple(level) for level in self.config["manufactured"]["levels"]]
        study = refinement_study(cfg, levels, solution, self.logger)
        shape = (cfg.grid.n_rho, cfg.grid.n_theta)
        if shape in study.levels:
            return study.reports[study.levels.index(shape)], study
        return homotopy_solve(cfg, self.logger), study

    def _structural(self, cfg: SolveConfig, report: SolveReport) -> Optional[StructuralReport]:
        if not self.config["verify"]["structural"]:
            return None
        if cfg.psi.family not in (PsiFamily.POWER_THETA, PsiFamily.EXP_THETA):
            self.logger.debug(f"No structural conditions for the {cfg.psi.family.value} family")
            return None
        fields = report.fields
        return check_structural_conditions(
            cfg.psi, cfg.grid.points, fields.u, fields.theta, logger=self.logger
        )

    def run(self, cfg: Optional[SolveConfig] = None) -> RunResult:
        """
        Solve, verify and collect everything for the writers.

        :param cfg: The main problem, built from the configuration if None.
        :type cfg: SolveConfig
        :raises ConfigError: If the configuration does not describe a valid problem.
        :return: The run, with its exit code.
        :rtype: RunResult
        """
        cfg = cfg or self.solve_config()
        verify = self.config["verify"]
        effective = self.config.effective

        self.logger.info(f"Solving σ_{cfg.k}/σ_{cfg.l} on {cfg.grid}")
        report, study = self._solve(cfg)
        if not report.converged:
            self.logger.error(f"Solver did not converge: {report.reason} (t={report.t_reached:g})")
            return RunResult(effective, report, refinement=study, exit_code=EXIT_NONCONVERGED)
        self.logger.info(f"Converged: {report!r}")

        barriers: Optional[BarrierPair] = None
        if verify["barriers"] and (cfg.k, cfg.l) == (2, 0):
            barriers = barrier_pair(cfg, self.logger)
            if not barriers.converged:
                self.logger.error("A barrier problem did not converge")
                return RunResult(effective, report, barriers=barriers, refinement=study, exit_code=EXIT_NONCONVERGED)

        structural = self._structural(cfg, report)
        estimates = None
        passed = True
        if verify["estimates"]:
            estimates = estimate_report(
                report,
                barriers,
                structural.to_dict() if structural is not None else None,
                verify["s-sweep"],
                verify["barrier-tolerance"],
            )
            passed = estimates.holds
            if not passed:
                self.logger.error("Estimate checks failed")
        if study is not None:
            orders = study.orders
            order_ok = study.converged and bool(orders) and np.isfinite(orders[-1]) and orders[-1] >= verify["min-order"]
            if not order_ok:
                self.logger.error(f"Observed convergence orders {orders} are below {verify['min-order']}")
            passed = passed and order_ok

        return RunResult(
            effective,
            report,
            estimates,
            barriers,
            study,
            structural,
            EXIT_OK if passed else EXIT_CHECKS,
        )

    def load_writer(self, path: str, is_module: bool = False) -> None:
        """Load a writer plugin by module path"""
        writer = load_writer(path, self.config["output"], self.logger, is_module=is_module)
        if writer is not None:
            self.writers.append(writer)

    def load_writers(self, path: str) -> None:
        """Load all writer plugins in the specified directory"""
        self.writers.extend(load_writers(path, self.config["output"], self.logger))

    def write(self, result: RunResult, out_dir: Path) -> list[Path]:
        """
        Hand the run to every registered writer.

        The writers fill a staging directory inside ``out_dir``; their files are
        moved into ``out_dir`` only once every writer has succeeded.

        :raises WriterError: If the output directory cannot be created or a writer fails.
            No file of the run is left behind.
        """
        out_dir = Path(out_dir)
        created = not out_dir.exists()
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out_dir))
        except OSError as e:
            raise WriterError(f"Cannot create {out_dir}: {e.strerror}") from e
        written = []
        try:
            staged = [writer.write(result, staging) for writer in self.writers]
            for path in staged:
                target = out_dir / path.name
                try:
                    os.replace(path, target)
                except OSError as e:
                    raise WriterError(f"Cannot move {path.name} into {out_dir}: {e.strerror}") from e
                written.append(target)
        except WriterError:
            for path in written:
                path.unlink(missing_ok=True)
            if created:
                shutil.rmtree(out_dir, ignore_errors=True)
            raise
        finally:
            shutil.rmtree(staging, ignore_errors=True)
        return written
