import copy
from pathlib import Path
from typing import Any, Callable, Optional, Union

import tomlkit
from tomlkit.exceptions import ParseError

from .errors import ConfigError

_FAMILIES = ("constant", "power_theta", "exp_theta")
_FORMATS = ("csv", "json")


class Key:
    """
    Represents one typed configuration key with its default and range check.
    """

    __slots__ = ("type", "default", "check", "hint")

    def __init__(self, type: Union[type, tuple], default: Any, check: Callable[[Any], bool] = None, hint: str = "") -> None:
        self.type = type
        self.default = default
        self.check = check
        self.hint = hint

    def validate(self, name: str, value: Any) -> Any:
        # bool is an int subclass, reject it for numeric keys
        if isinstance(value, bool) and self.type is not bool:
            raise ConfigError(f"'{name}' must be {self._type_name()}, got a boolean")
        if self.type is float and isinstance(value, int):
            value = float(value)
        if not isinstance(value, self.type):
            raise ConfigError(f"'{name}' must be {self._type_name()}, got {type(value).__name__}")
        if self.check is not None and not self.check(value):
            raise ConfigError(f"'{name}' is out of range: {value!r}{f' ({self.hint})' if self.hint else ''}")
        return value

    def _type_name(self) -> str:
        if isinstance(self.type, tuple):
            return " or ".join(t.__name__ for t in self.type)
        return self.type.__name__


def _positive(value) -> bool:
    return value > 0


def _float_list(value) -> bool:
    return all(isinstance(item, (int, float)) and not isinstance(item, bool) for item in value)


def _levels(value) -> bool:
    return len(value) >= 2 and all(
        isinstance(level, list) and len(level) == 2 and all(isinstance(item, int) for item in level) for level in value
    )


SCHEMA: dict[str, Union[Key, dict[str, Key]]] = {
    "debug-mode": Key(bool, False),
    "seed": Key(int, 7, lambda v: v >= 0, "non-negative"),
    "log": {
        "retention": Key(int, 30, _positive, "days, positive"),
        "format": Key(
            str,
            "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | <level>{message}</level>",
        ),
        "file": Key(bool, False),
    },
    "grid": {
        "radius": Key(float, 1.0, _positive, "positive chart radius"),
        "n-rho": Key(int, 32, lambda v: v >= 8, "at least 8"),
        "n-theta": Key(int, 64, lambda v: v >= 16 and v % 2 == 0, "even, at least 16"),
    },
    "equation": {
        "k": Key(int, 2, lambda v: v in (1, 2), "1 or 2"),
        "l": Key(int, 0, lambda v: v == 0, "only l=0 is solved"),
    },
    "psi": {
        "family": Key(str, "constant", lambda v: v in _FAMILIES, f"one of {', '.join(_FAMILIES)}"),
        "p": Key(float, 0.0, lambda v: v >= 0, "non-negative"),
        "h": Key(list, [0.25], lambda v: len(v) >= 1 and _float_list(v), "non-empty list of numbers"),
    },
    "boundary": {
        "b": Key(float, 2.0),
        "a": Key(list, [], lambda v: len(v) in (0, 3) and _float_list(v), "empty or three numbers"),
    },
    "manufactured": {
        "enable": Key(bool, False),
        "base": Key(float, 2.0, _positive, "positive"),
        "amplitude": Key(float, 0.1, lambda v: v >= 0, "non-negative"),
        "levels": Key(list, [[16, 32], [32, 64], [64, 128]], _levels, "at least two [n_rho, n_theta] pairs"),
    },
    "solver": {
        "newton-tol": Key(float, 1e-10, _positive, "positive"),
        "max-newton": Key(int, 50, _positive, "positive"),
        "homotopy-steps": Key(int, 10, _positive, "positive"),
        "damping": Key(float, 0.5, lambda v: 0 < v < 1, "in (0, 1)"),
        "min-step": Key(float, 2.0**-20, _positive, "positive"),
        "min-t-step": Key(float, 2.0**-10, _positive, "positive"),
        "fd-jacobian-eps": Key(float, 1e-6, _positive, "positive"),
    },
    "verify": {
        "barriers": Key(bool, True),
        "estimates": Key(bool, True),
        "structural": Key(bool, True),
        "s-sweep": Key(list, [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0], lambda v: len(v) >= 1 and _float_list(v)),
        "barrier-tolerance": Key(float, 1e-8, _positive, "positive"),
        "min-order": Key(float, 1.7, _positive, "positive"),
    },
    "output": {
        "dir": Key(str, "out"),
        "formats": Key(list, ["csv", "json"], lambda v: all(item in _FORMATS for item in v), f"subset of {_FORMATS}"),
    },
}


def defaults() -> dict:
    """
    The configuration with every key at its default.
    """
    return {
        name: ({key: copy.deepcopy(spec.default) for key, spec in entry.items()} if isinstance(entry, dict) else entry.default)
        for name, entry in SCHEMA.items()
    }


def validate(document: dict) -> dict:
    """
    Check a parsed document against :data:`SCHEMA` and apply the defaults.

    :param document: A plain (unwrapped) mapping.
    :type document: dict
    :raises ConfigError: On unknown tables or keys, wrong types and out-of-range values.
    :return: The effective configuration.
    :rtype: dict
    """
    effective = defaults()
    for name, value in document.items():
        entry = SCHEMA.get(name)
        if entry is None:
            raise ConfigError(f"Unknown configuration key '{name}'")
        if isinstance(entry, Key):
            effective[name] = entry.validate(name, value)
            continue
        if not isinstance(value, dict):
            raise ConfigError(f"'{name}' must be a table")
        for key, item in value.items():
            spec = entry.get(key)
            if spec is None:
                raise ConfigError(f"Unknown configuration key '{name}.{key}'")
            effective[name][key] = spec.validate(f"{name}.{key}", item)
    for level in effective["manufactured"]["levels"]:
        if level[0] < 8 or level[1] < 16 or level[1] % 2:
            raise ConfigError(f"'manufactured.levels' entry {level} is not a valid grid")
    return effective


class Config:
    """
    Represents a validated run configuration read from a TOML file.
    """

    __slots__ = ("_path", "_config")

    def __init__(self, path: Optional[Union[str, Path]] = "config.toml", text: Optional[str] = None) -> None:
        """
        :param path: The configuration file.
        :type path: str or Path
        :param text: TOML text used instead of the file, if given.
        :type text: str
        :raises ConfigError: If the file is missing, malformed or invalid.
        """
        self._path = None if path is None else Path(path)
        self._config = self._load_config(text)

    @classmethod
    def from_string(cls, text: str) -> "Config":
        return cls(None, text)

    def _load_config(self, text: Optional[str] = None) -> dict:
        """
        Load and validate the configuration.
        This is an internal method and should not be called directly.

        :raises ConfigError: Raised when the file is missing or the config is invalid.
        :return: The effective configuration.
        :rtype: dict
        """
        if text is None:
            if self._path is None:
                return defaults()
            try:
                text = self._path.read_text(encoding="utf-8")
            except OSError as e:
                raise ConfigError(f"Cannot read configuration file '{self._path}': {e.strerror}") from e
        try:
            document = tomlkit.parse(text).unwrap()
        except ParseError as e:
            raise ConfigError(f"Malformed configuration: {e}") from e
        return validate(document)

    @property
    def path(self) -> Optional[Path]:
        return self._path

    @property
    def effective(self) -> dict:
        """
        A deep copy of the effective configuration, defaults applied.
        """
        return copy.deepcopy(self._config)

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a key from the configuration.

        :param key: The key to get.
        :type key: str
        :param default: The default value if the key is not found.
        :type default: Any, optional

        :return: The value of the key.
        :rtype: Any
        """
        return self._config.get(key, default)

    def reload(self) -> None:
        """
        Reload the configuration file.
        """
        self._config = self._load_config()

    def __getitem__(self, key: str) -> Any:
        return self._config[key]

    def __repr__(self) -> str:
        return f"Config(path={str(self._path) if self._path else None!r})"
