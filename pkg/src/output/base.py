from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from ..numerics.solver import BarrierPair, RefinementStudy, SolveReport
from ..problem.psispec import StructuralReport
from ..verify.estimates import EstimateReport


class RunResult:
    """
    Represents everything a ``solve`` run produced, as handed to the output writers.
    """

    __slots__ = ("config", "report", "estimates", "barriers", "refinement", "structural", "exit_code")

    def __init__(
        self,
        config: dict,
        report: SolveReport,
        estimates: Optional[EstimateReport] = None,
        barriers: Optional[BarrierPair] = None,
        refinement: Optional[RefinementStudy] = None,
        structural: Optional[StructuralReport] = None,
        exit_code: int = 0,
    ) -> None:
        self.config = config
        self.report = report
        self.estimates = estimates
        self.barriers = barriers
        self.refinement = refinement
        self.structural = structural
        self.exit_code = exit_code

    def to_dict(self) -> dict:
        return {
            "exit_code": self.exit_code,
            "config": self.config,
            "solve": self.report.to_dict(),
            "estimates": self.estimates.to_dict() if self.estimates is not None else None,
            "barriers": self.barriers.to_dict() if self.barriers is not None else None,
            "refinement": self.refinement.to_dict() if self.refinement is not None else None,
            "structural": self.structural.to_dict() if self.structural is not None else None,
        }


class BaseWriter(ABC):
    """
    An ABC for output writers.
    """

    filename: str

    @abstractmethod
    def write(self, result: RunResult, out_dir: Path) -> Path:
        """
        Write one output file for the run.

        :param result: The finished run.
        :type result: RunResult
        :param out_dir: The output directory, already created.
        :type out_dir: Path
        :raises WriterError: If the file cannot be written.
        :return: The written file.
        :rtype: Path
        """
