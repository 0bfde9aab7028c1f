import inspect
import logging
import sys
from datetime import timedelta
from pathlib import Path
from typing import Optional, Union

from loguru._logger import Core, Logger, _defaults

from .utils import MISSING


class Logging:
    """
    Represents a logger with a standard-error sink and an optional rotating file sink.
    """

    def __init__(
        self,
        retention: Union[timedelta, int],
        debug_mode: bool = False,
        format: str = MISSING,
        log_dir: Optional[Path] = None,
    ) -> None:
        """
        Initialize the logger instance.

        :param retention: How long rotated log files are kept; an integer counts days.
        :type retention: Union[timedelta, int]
        :param debug_mode: Log at DEBUG instead of INFO.
        :type debug_mode: bool
        :param format: The loguru record format.
        :type format: str
        :param log_dir: Directory of the file sink; no file sink when None.
        :type log_dir: Optional[Path]
        """
        level = "DEBUG" if debug_mode else "INFO"
        if isinstance(retention, int):
            retention = timedelta(days=retention)
        self._logger = Logger(
            core=Core(),
            exception=None,
            depth=0,
            record=False,
            lazy=False,
            colors=False,
            raw=False,
            capture=True,
            patchers=[],
            extra={},
        )
        self._logger.add(
            sys.stderr,
            level=level,
            diagnose=False,
            format=format or _defaults.LOGURU_FORMAT,
        )
        self._level = level
        self._retention = retention
        self._format = format or _defaults.LOGURU_FORMAT
        if log_dir is not None:
            self.add_file_sink(log_dir)
        self._logger.debug(f"Logger initialized. Debug mode {'enabled' if debug_mode else 'disabled'}.")

    def add_file_sink(self, log_dir: Path) -> None:
        """
        Add a daily-rotated, gzip-compressed file sink under ``log_dir``.
        """
        self._logger.add(
            str(Path(log_dir) / "{time:YYYY-MM-DD_HH-mm-ss_SSS}.log"),
            rotation="00:00",
            retention=self._retention,
            encoding="utf-8",
            compression="gz",
            diagnose=False,
            level=self._level,
            format=self._format,
        )

    def get_logger(self) -> Logger:
        """
        The logger instance.

        :return: The logger instance.
        :rtype: loguru._logger.Logger
        """
        return self._logger

    def close(self) -> None:
        """
        Remove every sink, flushing and closing the log files.
        """
        self._logger.remove()


class InterceptHandler(logging.Handler):
    """
    Routes standard-library log records (e.g. from scipy) into a loguru logger.
    """

    def __init__(self, logger: Logger) -> None:
        super().__init__()
        self.logger = logger

    def emit(self, record: logging.LogRecord) -> None:
        """
        Forward one record at its loguru level, or at its numeric level when
        loguru has no level of that name.

        :param record: The standard-library record.
        :type record: logging.LogRecord
        """
        level: Union[str, int]
        try:
            level = self.logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # walk out of the logging module so loguru reports the caller
        frame, depth = inspect.currentframe(), 0
        while frame and (depth == 0 or frame.f_code.co_filename == logging.__file__):
            frame = frame.f_back
            depth += 1

        self.logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def intercept_standard_logging(logger: Logger, debug_mode: bool = False) -> None:
    """
    Install :class:`InterceptHandler` as the only root handler.
    """
    logging.basicConfig(
        handlers=[InterceptHandler(logger)],
        level=0 if debug_mode else logging.INFO,
        force=True,
    )
