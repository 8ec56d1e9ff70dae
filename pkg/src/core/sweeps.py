"""Copyright (c) 2025 Natsurii.

Created Date: Friday, June 13th 2025, 5:26:18 pm
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
2025-06-13	NAT	Initial file creation
2025-06-21	NAT	Two-axis efficiency and filter grids, point covariances
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Any

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import optimize

from src.core.dynamics import (
    Approximation,
    DriftModel,
    build_drift,
    hybrid_mode_frequencies,
    stability,
)
from src.core.entanglement import log_negativity, steering
from src.core.scattering import (
    OutputCovariance,
    filtered_covariance,
    noise_matrix,
    output_covariance,
    reduce_bipartite,
)
from src.core.teleport import (
    InputState,
    fidelity_vs_negativity_benchmark,
    teleport_output,
)
from src.errors import ConfigError, InstabilityError, NumericalError
from src.models.chain import (
    TWO_PI,
    ChainParams,
    cooperativities,
    with_cooperativity,
    with_port_efficiency,
    with_uniform_occupation,
)
from src.models.config import chain_from_tree, has_path, set_path
from src.models.presets import preset_tree

logger = logging.getLogger(__name__)

VIRTUAL_PATHS = frozenset(
    {
        "coop.ab",
        "coop.mb",
        "coop.mc",
        "n_th",
        "efficiency.a",
        "efficiency.c",
        "filter.sigma_hz",
        "filter.center_hz",
        "input.r_in",
    },
)
MAX_BRACKET_EXPANSIONS = 60
BENCHMARK_COLUMNS = (
    "r_in",
    "log_negativity",
    "r_resource",
    "fidelity_closed_form",
    "fidelity_oracle",
)


class Scale(Enum):
    """Axis spacing."""

    LINEAR = "linear"
    LOG = "log"


class Recipe(Enum):
    """Named sweeps."""

    COOP_PLANE = "coop_plane"
    MAGNON_SCAN = "magnon_scan"
    FILTER_SCAN = "filter_scan"
    TEMPERATURE_SCAN = "temperature_scan"
    EFFICIENCY_SCAN = "efficiency_scan"
    DISK_PLANE = "disk_plane"
    BENCHMARK = "benchmark"
    STEERING_SCAN = "steering_scan"
    CUSTOM = "custom"


class SweepAxis(BaseModel):
    """One swept parameter."""

    model_config = ConfigDict(frozen=True)

    path: str
    start: float
    stop: float
    points: int = Field(ge=2)
    scale: Scale = Scale.LINEAR

    @model_validator(mode="after")
    def check_log_range(self) -> Self:
        """Log axes need positive bounds."""
        if self.scale is Scale.LOG and min(self.start, self.stop) <= 0:
            msg = f"log axis {self.path} needs positive bounds"
            raise ValueError(msg)
        return self

    def values(self) -> np.ndarray:
        """Grid values; a zero-width axis collapses to a single point."""
        if self.start == self.stop:
            return np.array([self.start])
        if self.scale is Scale.LOG:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    @classmethod
    def parse(cls, text: str) -> "SweepAxis":
        """Parse ``PATH:START:STOP:POINTS[:log|linear]``."""
        parts = text.split(":")
        if len(parts) not in (4, 5):
            msg = "axis must read PATH:START:STOP:POINTS[:log]"
            raise ConfigError(msg, text)
        try:
            return cls(
                path=parts[0],
                start=float(parts[1]),
                stop=float(parts[2]),
                points=int(parts[3]),
                scale=Scale(parts[4]) if len(parts) == 5 else Scale.LINEAR,  # noqa: PLR2004
            )
        except ValueError as exc:
            raise ConfigError(str(exc), text) from exc


class SweepSpec(BaseModel):
    """A grid of chain evaluations."""

    model_config = ConfigDict(frozen=True)

    recipe: Recipe = Recipe.CUSTOM
    axes: tuple[SweepAxis, ...] = ()
    base: dict[str, Any] = Field(default_factory=lambda: preset_tree("table1"))
    approximation: Approximation = Approximation.RESOLVED
    port_efficiency: dict[str, float] = Field(default_factory=dict)
    filter_center_hz: float | None = None
    filter_sigma_hz: float | None = Field(default=None, gt=0)
    quadrature_points: int = Field(default=64, ge=16)
    fidelity: bool = False
    steering: bool = False
    hybrid: bool = False
    r_in: float = 0.0

    @model_validator(mode="after")
    def check_axes(self) -> Self:
        """Every axis names a real or virtual config path."""
        if len(self.axes) > 2:  # noqa: PLR2004
            msg = f"at most two axes, got {len(self.axes)}"
            raise ConfigError(msg, "axes")
        for axis in self.axes:
            if axis.path not in VIRTUAL_PATHS and not has_path(
                self.base, axis.path,
            ):
                msg = "swept parameter names no configuration path"
                raise ConfigError(msg, axis.path)
        return self


class SweepTable(BaseModel):
    """Ordered result records."""

    columns: list[str]
    rows: list[dict[str, Any]]


def _log_axis(path: str, start: float, stop: float, points: int) -> SweepAxis:
    return SweepAxis(path=path, start=start, stop=stop, points=points, scale=Scale.LOG)


def _linear_axis(path: str, start: float, stop: float, points: int) -> SweepAxis:
    return SweepAxis(path=path, start=start, stop=stop, points=points)


IDEAL_PORTS = {"a": 1.0, "c": 1.0}

RECIPE_DEFAULTS: dict[Recipe, dict[str, Any]] = {
    Recipe.COOP_PLANE: {
        "preset": "table1",
        "axes": (
            _log_axis("coop.ab", 0.1, 1e3, 25),
            _log_axis("coop.mc", 0.1, 1e3, 25),
        ),
        "port_efficiency": IDEAL_PORTS,
    },
    Recipe.MAGNON_SCAN: {
        "preset": "table1",
        "axes": (_linear_axis("modes.m.freq_hz", 9.5e9, 10.5e9, 101),),
        "hybrid": True,
    },
    Recipe.FILTER_SCAN: {
        "preset": "table1",
        "axes": (
            _linear_axis("filter.center_hz", 9.9e9, 10.1e9, 41),
            _log_axis("filter.sigma_hz", 1e2, 1e5, 7),
        ),
        "port_efficiency": IDEAL_PORTS,
    },
    Recipe.TEMPERATURE_SCAN: {
        "preset": "table1",
        "axes": (_linear_axis("n_th", 0.0, 200.0, 41),),
        "port_efficiency": IDEAL_PORTS,
        "fidelity": True,
    },
    Recipe.EFFICIENCY_SCAN: {
        "preset": "table1",
        "axes": (
            _linear_axis("efficiency.c", 0.3, 1.0, 15),
            _linear_axis("efficiency.a", 0.3, 1.0, 15),
        ),
        "fidelity": True,
    },
    Recipe.DISK_PLANE: {
        "preset": "table2",
        "axes": (
            _log_axis("coop.mc", 1.0, 1e3, 25),
            _log_axis("coop.ab", 0.1, 100.0, 40),
        ),
        "approximation": Approximation.RWA,
        "fidelity": True,
    },
    Recipe.STEERING_SCAN: {
        "preset": "table1",
        "axes": (_log_axis("coop.ab", 1.0, 300.0, 30),),
        "port_efficiency": IDEAL_PORTS,
        "steering": True,
    },
    Recipe.BENCHMARK: {"preset": "table1", "axes": ()},
    Recipe.CUSTOM: {"preset": "table1", "axes": ()},
}


def recipe_spec(
    recipe: Recipe,
    base: dict[str, Any] | None = None,
    **overrides: Any,  # noqa: ANN401
) -> SweepSpec:
    """Build the spec of a named recipe, applying ``overrides``."""
    defaults = dict(RECIPE_DEFAULTS[recipe])
    preset = defaults.pop("preset")
    fields = {**defaults, **{k: v for k, v in overrides.items() if v is not None}}
    if not fields.get("axes"):
        fields["axes"] = defaults["axes"]
    return SweepSpec(
        recipe=recipe,
        base=preset_tree(preset) if base is None else base,
        **fields,
    )


def _prepare(
    spec: SweepSpec,
    values: dict[str, float],
) -> tuple[ChainParams, dict[str, float]]:
    tree = spec.base
    virtual = {}
    for path, value in values.items():
        if path in VIRTUAL_PATHS:
            virtual[path] = value
        else:
            tree = set_path(tree, path, float(value))
    params = chain_from_tree(tree)
    for label, efficiency in spec.port_efficiency.items():
        params = with_port_efficiency(params, label, efficiency)

    settings = {
        "center_hz": spec.filter_center_hz,
        "sigma_hz": spec.filter_sigma_hz,
        "r_in": spec.r_in,
    }
    for path, value in virtual.items():
        match path:
            case "coop.ab" | "coop.mb" | "coop.mc":
                params = with_cooperativity(params, path[-2:], value)
            case "n_th":
                params = with_uniform_occupation(params, value)
            case "efficiency.a" | "efficiency.c":
                params = with_port_efficiency(params, path[-1], value)
            case "filter.sigma_hz":
                settings["sigma_hz"] = value
            case "filter.center_hz":
                settings["center_hz"] = value
            case "input.r_in":
                settings["r_in"] = value
    return params, settings


def columns(spec: SweepSpec) -> list[str]:
    """Column order of the records produced by ``spec``."""
    names = [axis.path for axis in spec.axes]
    names += ["stable", "margin", "c_ab", "c_mc", "eta_minus", "log_negativity"]
    if spec.steering:
        names += ["steering_a_to_c", "steering_c_to_a"]
    if spec.fidelity:
        names.append("fidelity")
    if spec.hybrid:
        names += ["hybrid_1_hz", "hybrid_2_hz", "hybrid_3_hz"]
    names.append("converged")
    return names


def _covariance(
    spec: SweepSpec,
    params: ChainParams,
    model: DriftModel,
    settings: dict[str, float | None],
) -> OutputCovariance:
    noise = noise_matrix(params)
    center = (
        params.detuning
        if settings["center_hz"] is None
        else TWO_PI * settings["center_hz"]
    )
    if settings["sigma_hz"]:
        return filtered_covariance(
            model,
            noise,
            center,
            TWO_PI * settings["sigma_hz"],
            spec.quadrature_points,
        )
    return output_covariance(model, noise, center)


def grid_points(spec: SweepSpec) -> list[dict[str, float]]:
    """Axis values of every grid point, first axis outermost."""
    grids = [axis.values() for axis in spec.axes]
    paths = [axis.path for axis in spec.axes]
    return [
        dict(zip(paths, point, strict=True))
        for point in itertools.product(*grids)
    ]


def point_covariance(
    spec: SweepSpec,
    values: dict[str, float],
) -> OutputCovariance | None:
    """Full output covariance at one grid point, ``None`` when unstable."""
    params, settings = _prepare(spec, values)
    model = build_drift(params, approximation=spec.approximation)
    if not stability(model).stable:
        return None
    return _covariance(spec, params, model, settings)


def evaluate_point(spec: SweepSpec, values: dict[str, float]) -> dict[str, Any]:
    """Evaluate one grid point; unstable points carry no quantifiers."""
    params, settings = _prepare(spec, values)
    row: dict[str, Any] = dict.fromkeys(columns(spec))
    row.update({path: float(value) for path, value in values.items()})

    coops = cooperativities(params)
    model = build_drift(params, approximation=spec.approximation)
    report = stability(model)
    row.update(
        stable=report.stable,
        margin=report.margin,
        c_ab=coops.c_ab,
        c_mc=coops.c_mc,
    )
    if spec.hybrid:
        for index, mode in enumerate(hybrid_mode_frequencies(params), start=1):
            row[f"hybrid_{index}_hz"] = mode.frequency / TWO_PI
    if not report.stable:
        logger.debug("unstable point %s, margin %.3e", values, report.margin)
        return row

    cov = _covariance(spec, params, model, settings)
    resource = reduce_bipartite(cov, ("a", "c"))
    negativity = log_negativity(resource)
    row.update(
        eta_minus=negativity.eta_minus,
        log_negativity=negativity.log_negativity,
        converged=cov.converged,
    )
    if spec.steering:
        result = steering(resource)
        row.update(steering_a_to_c=result.a_to_c, steering_c_to_a=result.c_to_a)
    if spec.fidelity:
        state = InputState.squeezed(settings["r_in"])
        row["fidelity"] = teleport_output(resource, state).fidelity
    return row


def _evaluate_task(task: tuple[SweepSpec, dict[str, float]]) -> dict[str, Any]:
    return evaluate_point(*task)


def _benchmark_table() -> SweepTable:
    rows = fidelity_vs_negativity_benchmark(
        [0.0, 0.3, 0.6],
        list(np.linspace(0.0, 4.0, 21)),
    )
    return SweepTable(
        columns=list(BENCHMARK_COLUMNS),
        rows=[row.model_dump() for row in rows],
    )


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepTable:
    """Evaluate the grid of ``spec`` in grid order.

    Args:
        spec (SweepSpec): Grid definition.
        jobs (int): Worker processes; 1 evaluates in-process.

    Returns:
        SweepTable: One record per grid point, first axis outermost.

    """
    if spec.recipe is Recipe.BENCHMARK:
        return _benchmark_table()
    if not spec.axes:
        msg = "a sweep needs at least one axis"
        raise ConfigError(msg, "axes")
    chain_from_tree(spec.base)

    tasks = [(spec, values) for values in grid_points(spec)]
    logger.info("running %s over %d points", spec.recipe.value, len(tasks))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(_evaluate_task, tasks, chunksize=8))
    else:
        rows = [_evaluate_task(task) for task in tasks]
    logger.info("finished %s", spec.recipe.value)
    return SweepTable(columns=columns(spec), rows=rows)


class BoundaryPoint(BaseModel):
    """Bisected and closed-form instability boundary at one C_mc."""

    model_config = ConfigDict(frozen=True)

    c_mc: float
    c_ab_critical: float
    c_ab_closed_form: float

    @property
    def relative_error(self) -> float:
        """|numerical - closed form| / closed form."""
        return abs(self.c_ab_critical - self.c_ab_closed_form) / (
            self.c_ab_closed_form
        )


def _margin(
    c_ab: float,
    params: ChainParams,
    approximation: Approximation,
) -> float:
    driven = with_cooperativity(params, "ab", c_ab)
    return stability(build_drift(driven, approximation=approximation)).margin


def stability_boundary(
    base: ChainParams,
    c_mc_grid: list[float],
    *,
    approximation: Approximation = Approximation.RESOLVED,
    rel_tol: float = 1e-10,
) -> list[BoundaryPoint]:
    """Locate the margin-zero crossing in C_ab for every C_mc.

    Args:
        base (ChainParams): Chain supplying C_mb and the linewidths.
        c_mc_grid (list[float]): Magnon-microwave cooperativities.
        approximation (Approximation): Coupling model of the drift.
        rel_tol (float): Relative tolerance of the root search.

    Returns:
        list[BoundaryPoint]: Critical C_ab next to 1 + C_mb/(C_mc+1).

    """
    points = []
    for c_mc in c_mc_grid:
        params = with_cooperativity(base, "mc", c_mc)
        if _margin(0.0, params, approximation) >= 0:
            msg = f"chain unstable without drive at C_mc={c_mc:.6g}"
            raise InstabilityError(msg)
        high = 2.0
        expansions = 0
        while _margin(high, params, approximation) < 0:
            high *= 2.0
            expansions += 1
            if expansions > MAX_BRACKET_EXPANSIONS:
                msg = f"no instability found below C_ab={high:.3e}"
                raise NumericalError(msg)
        logger.debug("bracket [0, %.3e] after %d expansions", high, expansions)
        critical = optimize.brentq(
            _margin,
            0.0,
            high,
            args=(params, approximation),
            xtol=1e-12,
            rtol=rel_tol,
        )
        points.append(
            BoundaryPoint(
                c_mc=c_mc,
                c_ab_critical=float(critical),
                c_ab_closed_form=cooperativities(params).boundary,
            ),
        )
    return points
