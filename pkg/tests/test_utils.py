import json

import numpy as np
import pytest

from src import MISSING, ConfigError, dump_json, resolve_threads
from src.utils import THREADS_ENV


def test_missing_is_falsy_and_unequal():
    assert not MISSING
    assert MISSING != MISSING
    assert repr(MISSING) == "..."


def test_threads_from_the_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert resolve_threads() == 3


def test_threads_default_when_unset(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert resolve_threads(2) == 2
    assert resolve_threads() >= 1


@pytest.mark.parametrize("raw", ["zero", "0", "-2", "1.5"])
def test_invalid_thread_counts(monkeypatch, raw):
    monkeypatch.setenv(THREADS_ENV, raw)
    with pytest.raises(ConfigError):
        resolve_threads()


def test_dump_json_handles_numpy_and_non_finite_values():
    text = dump_json({"a": np.float64(1.5), "b": np.int64(3), "c": np.array([1.0, np.inf]), "d": (True, np.nan)})
    assert text.endswith("\n")
    assert json.loads(text) == {"a": 1.5, "b": 3, "c": [1.0, None], "d": [True, None]}


def test_dump_json_is_stable():
    data = {"z": 1, "a": [np.float32(0.5)], "ψ": "ϑ"}
    assert dump_json(data) == dump_json(data)
    assert "ψ" in dump_json(data)
    assert list(json.loads(dump_json(data))) == ["z", "a", "ψ"]
