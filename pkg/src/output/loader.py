import importlib
import os
import re
from typing import Optional

from ..logging import Logger
from .base import BaseWriter

_PATH_SPLIT = re.compile(r"[\\/]")


def load_writer(path: str, options: dict, logger: Logger, is_module: bool = False) -> Optional[BaseWriter]:
    """
    Import a writer plugin and call its ``register`` function.

    :param path: The dotted module path of the plugin.
    :type path: str
    :param options: The ``[output]`` table, passed to ``register``.
    :type options: dict
    :param logger: The logger instance.
    :type logger: Logger
    :param is_module: Whether ``path`` is a package holding a ``register`` module.
    :type is_module: bool
    :return: The registered writer, or None if the plugin was skipped.
    :rtype: Optional[BaseWriter]
    """
    module_path = path + (".register" if is_module else "")
    module_name = path.split(".")[-1]

    try:
        logger.debug(f"Importing {module_path}...")
        module = importlib.import_module(module_path)
        register_func = getattr(module, "register", None)
        if register_func is None:
            logger.debug(f"Ignoring registering {module_name}: No register function found in {module_path}")
            return None
        namespace = getattr(module, "NAMESPACE", module_name)
        if namespace not in options.get("formats", []):
            logger.debug(f"Ignoring registering {module_name}: format '{namespace}' is not enabled")
            return None
        logger.debug(f"Registering {module_path}...")
        writer = register_func(options, logger)
        if not isinstance(writer, BaseWriter):
            logger.debug(f"Ignoring registering {module_name}: Unsupported return type '{type(writer).__name__}'")
            return None
        logger.info(f"Registered writer '{namespace}' successfully")
        return writer
    except ModuleNotFoundError as e:
        if e.name == module_path:
            logger.error(f"Failed to import '{module_name}': '{module_path}' not found")
        else:
            logger.error(f"Failed to register '{module_name}' (most likely lacking of dependencies)")
    except Exception as e:
        logger.opt(exception=e).error(f"Failed to import {module_path}")
    return None


def load_writers(path: str, options: dict, logger: Logger) -> list[BaseWriter]:
    """
    Load every writer plugin in the given directory, in name order.
    """
    writers = []
    for entry in sorted(os.scandir(path), key=lambda entry: entry.name):
        if entry.name.startswith("__"):
            continue
        if entry.is_file() and entry.name.endswith(".py"):
            module_path = re.sub(_PATH_SPLIT, ".", entry.path)[:-3]
            is_module = False
        elif entry.is_dir():
            module_path = re.sub(_PATH_SPLIT, ".", entry.path)
            is_module = True
        else:
            logger.debug(f"Ignoring importing unknown file type: {entry.name}")
            continue
        writer = load_writer(module_path, options, logger, is_module=is_module)
        if writer is not None:
            writers.append(writer)
    return writers
