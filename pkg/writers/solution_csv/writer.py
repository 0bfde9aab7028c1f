import csv
from pathlib import Path

import numpy as np

from src import BaseWriter, Logger, RunResult, WriterError

COLUMNS = ("ring_index", "angle_index", "y1", "y2", "u", "v", "lambda1", "lambda2", "theta")


class SolutionCsvWriter(BaseWriter):
    """
    Writes the nodal solution and its derived fields, one row per grid node.
    The pole is ring 0, angle 0.
    """

    filename = "solution.csv"

    def __init__(self, logger: Logger) -> None:
        self.logger = logger

    def rows(self, result: RunResult):
        report = result.report
        grid = report.grid
        fields = report.fields
        y = grid.points.y
        lam = np.asarray(fields.lam)
        for index in range(grid.size):
            ring, slot = grid.node(index)
            yield (
                int(ring),
                int(slot),
                float(y[index, 0]),
                float(y[index, 1]),
                float(fields.u[index]),
                float(fields.v[index]),
                float(lam[index, 0]),
                float(lam[index, 1]),
                float(fields.theta[index]),
            )

    def write(self, result: RunResult, out_dir: Path) -> Path:
        target = Path(out_dir) / self.filename
        try:
            with open(target, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(COLUMNS)
                writer.writerows(self.rows(result))
        except OSError as e:
            raise WriterError(f"Cannot write {target}: {e.strerror}") from e
        self.logger.info(f"Wrote {target}")
        return target
