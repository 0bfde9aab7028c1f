import pytest

from src import Config, ConfigError, Settings
from src.config import defaults, validate


def test_defaults_without_a_file():
    config = Config(None)
    assert config["grid"]["n-rho"] == 32
    assert config["equation"] == {"k": 2, "l": 0}
    assert config["output"]["formats"] == ["csv", "json"]
    assert config.path is None
    assert config.get("missing", 1) == 1


def test_partial_document_is_completed_by_defaults():
    config = Config.from_string('[grid]\nn-rho = 16\nn-theta = 32\n[psi]\nfamily = "power_theta"\np = 2\n')
    assert config["grid"] == {"radius": 1.0, "n-rho": 16, "n-theta": 32}
    assert config["psi"]["p"] == 2.0
    assert isinstance(config["psi"]["p"], float)
    assert config["solver"]["newton-tol"] == 1e-10


def test_effective_is_a_copy():
    config = Config(None)
    effective = config.effective
    effective["grid"]["n-rho"] = 99
    assert config["grid"]["n-rho"] == 32


@pytest.mark.parametrize(
    "text",
    [
        "[grid]\nsize = 3\n",
        "[plot]\nenable = true\n",
        "debug = true\n",
    ],
)
def test_unknown_keys_are_rejected(text):
    with pytest.raises(ConfigError, match="Unknown"):
        Config.from_string(text)


@pytest.mark.parametrize(
    "text",
    [
        '[grid]\nn-rho = "32"\n',
        "[grid]\nradius = true\n",
        "debug-mode = 1\n",
        "grid = 3\n",
        "[psi]\nh = 0.25\n",
    ],
)
def test_wrong_types_are_rejected(text):
    with pytest.raises(ConfigError):
        Config.from_string(text)


@pytest.mark.parametrize(
    "text",
    [
        "[grid]\nn-rho = 4\n",
        "[grid]\nn-theta = 33\n",
        "[grid]\nradius = -1.0\n",
        "[equation]\nk = 3\n",
        "[equation]\nl = 1\n",
        '[psi]\nfamily = "tabulated"\n',
        "[boundary]\na = [1.0, 2.0]\n",
        "[solver]\ndamping = 1.5\n",
        '[output]\nformats = ["xml"]\n',
        "[manufactured]\nlevels = [[16, 32]]\n",
        "[manufactured]\nlevels = [[4, 32], [8, 64]]\n",
    ],
)
def test_out_of_range_values_are_rejected(text):
    with pytest.raises(ConfigError):
        Config.from_string(text)


def test_malformed_toml():
    with pytest.raises(ConfigError, match="Malformed"):
        Config.from_string("[grid\nn-rho = 32")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="Cannot read"):
        Config(tmp_path / "absent.toml")


def test_reload_reads_the_file_again(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[grid]\nn-rho = 16\n", encoding="utf-8")
    config = Config(path)
    assert config["grid"]["n-rho"] == 16
    path.write_text("[grid]\nn-rho = 24\n", encoding="utf-8")
    config.reload()
    assert config["grid"]["n-rho"] == 24


def test_shipped_configs_are_valid():
    for path in ("config.toml", "configs/umbilic.toml", "configs/manufactured.toml", "configs/power_theta.toml"):
        Config(path)


def test_validate_matches_defaults():
    assert validate({}) == defaults()


def test_settings_sections():
    assert Settings.get("selftest")["umbilic-grid"] == [32, 64]
    assert set(Settings.get("suites")) >= {"triples", "threads", "b0"}
    assert Settings.get("absent", 5) == 5
