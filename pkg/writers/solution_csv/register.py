"""
Register the solution.csv writer.

The `register` function is the entry point: it receives the ``[output]`` table
and the logger and returns the writer instance.
"""

from src import Logger

NAMESPACE = "csv"
"the output format handled by this writer"


def register(config: dict, logger: Logger):
    """
    Register the solution.csv writer.

    :param config: The ``[output]`` configuration table.
    :type config: dict
    :param logger: The logger instance.
    :type logger: Logger
    """
    from .writer import SolutionCsvWriter

    return SolutionCsvWriter(logger)
