"""Copyright (c) 2025 Natsurii.

Created Date: Sunday, June 8th 2025, 5:02:31 pm
Author: Natsurii

Redistribution and use in source and binary forms, with or without
modification, are permitted provided that the following conditions are
met:

1. Redistributions of source code must retain the above copyright notice,
this list of conditions and the following disclaimer.

2. Redistributions in binary form must reproduce the above copyright
notice, this list of conditions and the following disclaimer in the
documentation and/or other materials provided with the distribution.

3. Neither the name of the copyright holder nor the names of its
contributors may be used to endorse or promote products derived from this
software without specific prior written permission.

THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS AS
IS AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO,
THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR
PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR
CONTRIBUTORS BE
LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF
THE POSSIBILITY OF SUCH DAMAGE.

HISTORY:
Date      	By	Comments
----------	---	----------------------------------------------------------
2025-06-08	NAT	Initial test
2025-06-16	NAT	Environment settings
2025-06-21	NAT	Temperature warning and log level cases
"""

import json
import logging
from pathlib import Path

import pytest

from src.errors import ConfigError
from src.models.chain import TWO_PI
from src.models.config import (
    chain_from_tree,
    has_path,
    load_config,
    resolve_tree,
    set_path,
)
from src.models.presets import PRESETS, preset_tree
from src.models.settings import Settings, load_settings

ENV_KEYS = (
    "MAGNOCHAIN_JOBS",
    "MAGNOCHAIN_FORMAT",
    "MAGNOCHAIN_QUADRATURE_POINTS",
    "MAGNOCHAIN_LOG_LEVEL",
)


@pytest.fixture
def tree() -> dict:
    """Fresh copy of the resolved-sideband preset."""
    return preset_tree("table1")


def test_preset_builds_angular_rates(tree: dict) -> None:
    """Test that Hz values become rad/s."""
    params = chain_from_tree(tree)
    assert params.b.frequency == pytest.approx(TWO_PI * 10e9)
    assert params.a.port_rate == pytest.approx(TWO_PI * 1e9)
    assert params.g_mc == pytest.approx(TWO_PI * 180e6)
    assert params.alpha == 42.0


def test_preset_copies_are_private(tree: dict) -> None:
    """Test that editing a preset copy leaves the registry untouched."""
    tree["drive"]["alpha"] = 1.0
    assert PRESETS["table1"]["drive"]["alpha"] == 42.0


def test_unknown_preset_raises() -> None:
    """Test that an unknown preset name is a configuration error."""
    with pytest.raises(ConfigError):
        resolve_tree(None, "table9")


def test_missing_key_reports_path(tree: dict) -> None:
    """Test that a missing key names its dotted path."""
    del tree["modes"]["c"]["gamma_hz"]
    with pytest.raises(ConfigError) as info:
        chain_from_tree(tree)
    assert info.value.path == "modes.c.gamma_hz"


def test_non_numeric_value_reports_path(tree: dict) -> None:
    """Test that a string rate is rejected with its path."""
    tree["modes"]["a"]["freq_hz"] = "ten"
    with pytest.raises(ConfigError) as info:
        chain_from_tree(tree)
    assert info.value.path == "modes.a.freq_hz"


def test_negative_rate_reports_mode(tree: dict) -> None:
    """Test that a negative linewidth is rejected for its mode."""
    tree["modes"]["b"]["gamma_hz"] = -1.0
    with pytest.raises(ConfigError) as info:
        chain_from_tree(tree)
    assert info.value.path == "modes.b"


def test_both_drives_rejected(tree: dict) -> None:
    """Test that power and alpha cannot both be given."""
    tree["drive"] = {"alpha": 1.0, "power_w": 1e-3}
    with pytest.raises(ConfigError) as info:
        chain_from_tree(tree)
    assert info.value.path == "drive"


def test_temperature_override_warns(
    tree: dict,
    caplog: pytest.LogCaptureFixture,
) -> None:
    """Test that temperature_k beside explicit n_th logs a warning."""
    tree["temperature_k"] = 1.0
    tree["modes"]["b"]["n_th"] = 5.0
    with caplog.at_level(logging.WARNING):
        params = chain_from_tree(tree)
    assert params.temperature == 1.0
    assert "overrides" in caplog.text


def test_temperature_over_zero_n_th_warns(
    tree: dict,
    caplog: pytest.LogCaptureFixture,
) -> None:
    """Test that an explicit n_th of zero still counts as set."""
    tree["temperature_k"] = 1.0
    with caplog.at_level(logging.WARNING):
        chain_from_tree(tree)
    assert "overrides" in caplog.text


def test_temperature_without_n_th_is_silent(
    tree: dict,
    caplog: pytest.LogCaptureFixture,
) -> None:
    """Test that temperature_k alone sets the occupations quietly."""
    tree["temperature_k"] = 1.0
    for entry in tree["modes"].values():
        del entry["n_th"]
    with caplog.at_level(logging.WARNING):
        params = chain_from_tree(tree)
    assert params.temperature == 1.0
    assert "overrides" not in caplog.text


def test_load_config_matches_tree(tree: dict, tmp_path: Path) -> None:
    """Test that a config file loads the same chain as its tree."""
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(tree), encoding="utf-8")
    assert load_config(path) == chain_from_tree(tree)
    assert resolve_tree(path, "table2") == tree


@pytest.mark.parametrize("text", ["{not json", "[1, 2]"])
def test_bad_config_file(tmp_path: Path, text: str) -> None:
    """Test that malformed files raise ConfigError."""
    path = tmp_path / "bad.json"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


def test_missing_config_file(tmp_path: Path) -> None:
    """Test that an absent file raises ConfigError."""
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json")


def test_set_path_returns_copy(tree: dict) -> None:
    """Test that set_path never edits its input."""
    updated = set_path(tree, "couplings.g_mc_hz", 1.0)
    assert updated["couplings"]["g_mc_hz"] == 1.0
    assert tree["couplings"]["g_mc_hz"] == 180e6


def test_unknown_path(tree: dict) -> None:
    """Test that set_path refuses paths absent from the tree."""
    assert not has_path(tree, "modes.q.freq_hz")
    with pytest.raises(ConfigError):
        set_path(tree, "modes.q.freq_hz", 1.0)


def test_settings_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the defaults with no environment overrides."""
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    assert load_settings(dotenv=False) == Settings()


def test_settings_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that MAGNOCHAIN_ variables override the defaults."""
    monkeypatch.setenv("MAGNOCHAIN_JOBS", "4")
    monkeypatch.setenv("MAGNOCHAIN_FORMAT", "json")
    monkeypatch.setenv("MAGNOCHAIN_QUADRATURE_POINTS", "32")
    monkeypatch.setenv("MAGNOCHAIN_LOG_LEVEL", "DEBUG")
    settings = load_settings(dotenv=False)
    assert settings.jobs == 4
    assert settings.output_format == "json"
    assert settings.quadrature_points == 32
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    ("key", "value"),
    [
        ("MAGNOCHAIN_FORMAT", "xml"),
        ("MAGNOCHAIN_QUADRATURE_POINTS", "8"),
        ("MAGNOCHAIN_LOG_LEVEL", "LOUD"),
    ],
)
def test_settings_invalid(
    monkeypatch: pytest.MonkeyPatch,
    key: str,
    value: str,
) -> None:
    """Test that invalid environment values raise ConfigError."""
    monkeypatch.setenv(key, value)
    with pytest.raises(ConfigError):
        load_settings(dotenv=False)
