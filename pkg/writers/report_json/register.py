"""
Register the report.json writer.
"""

from src import Logger

NAMESPACE = "json"
"the output format handled by this writer"


def register(config: dict, logger: Logger):
    """
    Register the report.json writer.

    :param config: The ``[output]`` configuration table.
    :type config: dict
    :param logger: The logger instance.
    :type logger: Logger
    """
    from .writer import ReportJsonWriter

    return ReportJsonWriter(logger)
