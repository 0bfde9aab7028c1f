from pathlib import Path

from src import BaseWriter, Logger, RunResult, WriterError, dump_json


class ReportJsonWriter(BaseWriter):
    """
    Writes the solve report, the estimates and the effective configuration.
    The file carries no timestamps, so reruns are byte-identical.
    """

    filename = "report.json"

    def __init__(self, logger: Logger) -> None:
        self.logger = logger

    def write(self, result: RunResult, out_dir: Path) -> Path:
        target = Path(out_dir) / self.filename
        try:
            with open(target, "w", encoding="utf-8", newline="\n") as f:
                f.write(dump_json(result.to_dict()))
        except OSError as e:
            raise WriterError(f"Cannot write {target}: {e.strerror}") from e
        self.logger.info(f"Wrote {target}")
        return target
