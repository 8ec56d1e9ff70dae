"""Copyright (c) 2025 Natsurii.

Created Date: Sunday, June 8th 2025, 3:31:47 pm
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
2025-06-08	NAT	Initial file creation
2025-06-13	NAT	Dotted path editing for sweeps
2025-06-21	NAT	Zero n_th counts as an explicit occupation
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.errors import ConfigError
from src.models.chain import TWO_PI, ChainParams, ModeLabel, ModeSpec
from src.models.presets import preset_tree

logger = logging.getLogger(__name__)

MODE_KEYS = ("freq_hz", "gamma_hz", "kappa_out_hz")
COUPLING_KEYS = ("g_ab_hz", "g_mb_hz", "g_mc_hz")


def _require(tree: dict[str, Any], key: str, path: str) -> Any:  # noqa: ANN401
    if not isinstance(tree, dict):
        msg = "expected a mapping"
        raise ConfigError(msg, path)
    if key not in tree:
        msg = "missing required key"
        raise ConfigError(msg, f"{path}.{key}" if path else key)
    return tree[key]


def _number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float):
        msg = f"expected a number, got {value!r}"
        raise ConfigError(msg, path)
    return float(value)


def chain_from_tree(tree: dict[str, Any]) -> ChainParams:
    """Build ``ChainParams`` from a configuration tree in Hz.

    Args:
        tree (dict): Mapping with ``modes``, ``couplings``, ``drive``,
            ``detuning_hz`` and optional ``temperature_k``.

    Returns:
        ChainParams: Validated parameters with angular rates.

    """
    modes = _require(tree, "modes", "")
    temperature = tree.get("temperature_k")
    explicit_n_th = False
    specs: dict[str, ModeSpec] = {}
    for label in ModeLabel:
        path = f"modes.{label.value}"
        entry = _require(modes, label.value, "modes")
        values = {
            key: _number(_require(entry, key, path), f"{path}.{key}")
            for key in MODE_KEYS
        }
        n_th = entry.get("n_th")
        if n_th is not None:
            explicit_n_th = True
        try:
            specs[label.value] = ModeSpec(
                label=label,
                frequency=TWO_PI * values["freq_hz"],
                internal_rate=TWO_PI * values["gamma_hz"],
                port_rate=TWO_PI * values["kappa_out_hz"],
                n_th=0.0 if n_th is None else _number(n_th, f"{path}.n_th"),
            )
        except ValidationError as exc:
            raise ConfigError(_first_error(exc), path) from exc

    couplings = _require(tree, "couplings", "")
    rates = {
        key: TWO_PI * _number(
            _require(couplings, key, "couplings"), f"couplings.{key}",
        )
        for key in COUPLING_KEYS
    }
    drive = _require(tree, "drive", "")
    if not isinstance(drive, dict) or ("power_w" in drive) == ("alpha" in drive):
        msg = "set exactly one of power_w or alpha"
        raise ConfigError(msg, "drive")

    if temperature is not None and explicit_n_th:
        logger.warning(
            "temperature_k=%s overrides per-mode n_th values", temperature,
        )

    try:
        return ChainParams(
            **specs,
            g_ab=rates["g_ab_hz"],
            g_mb=rates["g_mb_hz"],
            g_mc=rates["g_mc_hz"],
            detuning=TWO_PI * _number(
                _require(tree, "detuning_hz", ""), "detuning_hz",
            ),
            power=_optional(drive, "power_w", "drive"),
            alpha=_optional(drive, "alpha", "drive"),
            temperature=(
                None
                if temperature is None
                else _number(temperature, "temperature_k")
            ),
        )
    except ValidationError as exc:
        raise ConfigError(_first_error(exc)) from exc


def _optional(tree: dict[str, Any], key: str, path: str) -> float | None:
    if key not in tree:
        return None
    return _number(tree[key], f"{path}.{key}")


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    where = ".".join(str(part) for part in error["loc"])
    return f"{where}: {error['msg']}" if where else error["msg"]


def read_tree(path: str | Path) -> dict[str, Any]:
    """Read a JSON configuration tree from disk."""
    try:
        with Path(path).open(encoding="utf-8") as file:
            tree = json.load(file)
    except OSError as exc:
        msg = f"cannot read config: {exc}"
        raise ConfigError(msg, str(path)) from exc
    except json.JSONDecodeError as exc:
        msg = f"invalid JSON: {exc}"
        raise ConfigError(msg, str(path)) from exc
    if not isinstance(tree, dict):
        msg = "top level must be a mapping"
        raise ConfigError(msg, str(path))
    return tree


def load_config(path: str | Path) -> ChainParams:
    """Load and validate a configuration file."""
    return chain_from_tree(read_tree(path))


def resolve_tree(
    config: str | Path | None = None,
    preset: str | None = None,
) -> dict[str, Any]:
    """Pick the base tree from a file or a preset name (file wins)."""
    if config is not None:
        return read_tree(config)
    try:
        return preset_tree(preset or "table1")
    except KeyError as exc:
        raise ConfigError(str(exc.args[0]), "preset") from exc


def has_path(tree: dict[str, Any], path: str) -> bool:
    """Whether a dotted path names an existing key."""
    node: Any = tree
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            return False
        node = node[part]
    return True


def set_path(
    tree: dict[str, Any],
    path: str,
    value: float,
) -> dict[str, Any]:
    """Return a copy of ``tree`` with the dotted ``path`` set to ``value``."""
    if not has_path(tree, path):
        msg = "no such configuration path"
        raise ConfigError(msg, path)
    updated = copy.deepcopy(tree)
    *parents, leaf = path.split(".")
    node = updated
    for part in parents:
        node = node[part]
    node[leaf] = value
    return updated
