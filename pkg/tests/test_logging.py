import logging
from datetime import timedelta

from src import InterceptHandler, Logging, intercept_standard_logging


def test_debug_mode_sets_the_level(capsys):
    quiet = Logging(retention=1)
    quiet.get_logger().debug("hidden")
    quiet.close()
    verbose = Logging(retention=timedelta(days=1), debug_mode=True, format="{level}|{message}")
    verbose.get_logger().debug("shown")
    verbose.close()
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "DEBUG|shown" in err


def test_loggers_are_independent(capsys):
    first = Logging(retention=1, format="first {message}")
    second = Logging(retention=1, format="second {message}")
    first.get_logger().info("ping")
    err = capsys.readouterr().err
    assert "first ping" in err
    assert "second ping" not in err
    first.close()
    second.close()


def test_file_sink_writes_logs(tmp_path):
    log = Logging(retention=1, format="{message}", log_dir=tmp_path / "logs")
    log.get_logger().info("to the file")
    log.close()
    files = list((tmp_path / "logs").glob("*.log"))
    assert len(files) == 1
    assert "to the file" in files[0].read_text(encoding="utf-8")


def test_standard_logging_is_intercepted(capsys):
    log = Logging(retention=1, format="{level} {message}")
    intercept_standard_logging(log.get_logger())
    logging.getLogger("scipy.test").warning("from the standard library")
    assert "WARNING from the standard library" in capsys.readouterr().err
    assert isinstance(logging.getLogger().handlers[0], InterceptHandler)
    log.close()
    logging.basicConfig(handlers=[], force=True)


def test_unknown_levels_are_forwarded_by_number(capsys):
    log = Logging(retention=1, format="{level.no} {message}")
    record = logging.LogRecord("scipy.test", 25, __file__, 1, "between levels", None, None)
    InterceptHandler(log.get_logger()).emit(record)
    assert "25 between levels" in capsys.readouterr().err
    log.close()
