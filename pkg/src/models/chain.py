"""Copyright (c) 2025 Natsurii.

Created Date: Saturday, June 7th 2025, 11:40:52 am
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
2025-06-07	NAT	Initial file creation
2025-06-12	NAT	Add port efficiency and cooperativity helpers
"""

import logging
import math
from enum import Enum
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import constants

from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class ModeLabel(Enum):
    """Modes of the chain, in basis order."""

    A = "a"
    B = "b"
    M = "m"
    C = "c"


PORTLESS = frozenset({ModeLabel.B, ModeLabel.M})


class ModeSpec(BaseModel):
    """One bosonic mode. Rates and frequencies are angular (rad/s)."""

    model_config = ConfigDict(frozen=True)

    label: ModeLabel
    frequency: float
    internal_rate: float = Field(ge=0)
    port_rate: float = Field(default=0.0, ge=0)
    n_th: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def check_rates(self) -> Self:
        """Require a positive total linewidth and no port on b or m."""
        if self.internal_rate + self.port_rate <= 0:
            msg = f"mode {self.label.value} needs a positive total linewidth"
            raise ValueError(msg)
        if self.label in PORTLESS and self.port_rate > 0:
            msg = f"mode {self.label.value} has no output port"
            raise ValueError(msg)
        return self

    @property
    def total_rate(self) -> float:
        """Total decay rate γ + κ_out."""
        return self.internal_rate + self.port_rate

    @property
    def efficiency(self) -> float:
        """Port coupling efficiency κ_out / (γ + κ_out)."""
        return self.port_rate / self.total_rate


class ChainParams(BaseModel):
    """Four-mode optomagnomechanical chain a-b-m-c."""

    model_config = ConfigDict(frozen=True)

    a: ModeSpec
    b: ModeSpec
    m: ModeSpec
    c: ModeSpec
    g_ab: float = Field(ge=0)
    g_mb: float = Field(ge=0)
    g_mc: float = Field(ge=0)
    detuning: float
    power: float | None = Field(default=None, ge=0)
    alpha: float | None = Field(default=None, ge=0)
    temperature: float | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def check_modes_and_drive(self) -> Self:
        """Check mode labels and that exactly one drive is given."""
        for label in ModeLabel:
            if self.mode(label).label is not label:
                msg = f"slot {label.value} holds a {self.mode(label).label}"
                raise ValueError(msg)
        if (self.power is None) == (self.alpha is None):
            msg = "exactly one of power or alpha must be set"
            raise ValueError(msg)
        return self

    def mode(self, label: ModeLabel | str) -> ModeSpec:
        """Return the mode stored under ``label``."""
        return getattr(self, ModeLabel(label).value)

    @property
    def modes(self) -> tuple[ModeSpec, ModeSpec, ModeSpec, ModeSpec]:
        """Modes in basis order (a, b, m, c)."""
        return (self.a, self.b, self.m, self.c)


class Cooperativities(BaseModel):
    """Pairwise cooperativities of the chain."""

    model_config = ConfigDict(frozen=True)

    c_ab: float = Field(ge=0)
    c_mb: float = Field(ge=0)
    c_mc: float = Field(ge=0)

    @property
    def boundary(self) -> float:
        """Critical C_ab of the parametric instability."""
        return 1.0 + self.c_mb / (self.c_mc + 1.0)


def mean_photon_number(params: ChainParams) -> float:
    """Intracavity photon number of the driven optical mode.

    Args:
        params (ChainParams): Chain with the drive given as power (W).

    Returns:
        float: n̄_a = κ_out P / (ħω_a [Δ² + κ_tot²/4]).

    """
    if params.power is None:
        msg = "mean photon number needs the drive given as power"
        raise InvalidParameterError(msg)
    optical = params.a
    if optical.frequency <= 0:
        msg = "optical frequency must be positive"
        raise InvalidParameterError(msg)
    lorentzian = params.detuning**2 + optical.total_rate**2 / 4.0
    return (
        optical.port_rate
        * params.power
        / (constants.hbar * optical.frequency * lorentzian)
    )


def power_for_enhancement(params: ChainParams, alpha: float) -> float:
    """Drive power (W) giving the enhancement ``alpha``."""
    optical = params.a
    if optical.frequency <= 0 or optical.port_rate <= 0:
        msg = "optical frequency and port rate must be positive"
        raise InvalidParameterError(msg)
    lorentzian = params.detuning**2 + optical.total_rate**2 / 4.0
    return (
        alpha**2
        * constants.hbar
        * optical.frequency
        * lorentzian
        / optical.port_rate
    )


def enhancement(params: ChainParams) -> float:
    """Drive enhancement α, derived from the power when needed."""
    if params.alpha is not None:
        return params.alpha
    return math.sqrt(mean_photon_number(params))


def thermal_occupation(frequency: float, temperature: float) -> float:
    """Bose-Einstein occupation at angular ``frequency`` and ``temperature``.

    Args:
        frequency (float): Angular frequency in rad/s.
        temperature (float): Bath temperature in kelvin.

    Returns:
        float: 1 / (exp(ħω/k_BT) - 1), exactly zero at T = 0.

    """
    if frequency <= 0:
        msg = f"frequency must be positive, got {frequency}"
        raise InvalidParameterError(msg)
    if temperature < 0:
        msg = f"temperature must be non-negative, got {temperature}"
        raise InvalidParameterError(msg)
    if temperature == 0:
        return 0.0
    ratio = constants.hbar * frequency / (constants.k * temperature)
    return 1.0 / math.expm1(ratio)


def effective_occupations(params: ChainParams) -> dict[ModeLabel, float]:
    """Bath occupation per mode; a set temperature overrides n_th."""
    if params.temperature is None:
        return {spec.label: spec.n_th for spec in params.modes}
    return {
        spec.label: thermal_occupation(spec.frequency, params.temperature)
        for spec in params.modes
    }


def cooperativities(params: ChainParams) -> Cooperativities:
    """Cooperativities 4g²/(γ_i,tot γ_j,tot), pump-enhanced for a-b."""
    big_g = enhancement(params) * params.g_ab
    return Cooperativities(
        c_ab=4.0 * big_g**2 / (params.a.total_rate * params.b.total_rate),
        c_mb=4.0 * params.g_mb**2 / (params.m.total_rate * params.b.total_rate),
        c_mc=4.0 * params.g_mc**2 / (params.m.total_rate * params.c.total_rate),
    )


def with_enhancement(params: ChainParams, alpha: float) -> ChainParams:
    """Copy of ``params`` driven at a fixed enhancement."""
    return params.model_copy(update={"alpha": alpha, "power": None})


def with_port_efficiency(
    params: ChainParams,
    label: ModeLabel | str,
    efficiency: float,
) -> ChainParams:
    """Split a mode's fixed total linewidth with port efficiency η."""
    label = ModeLabel(label)
    if label in PORTLESS:
        msg = f"mode {label.value} has no output port"
        raise InvalidParameterError(msg)
    if not 0.0 < efficiency <= 1.0:
        msg = f"efficiency must lie in (0, 1], got {efficiency}"
        raise InvalidParameterError(msg)
    spec = params.mode(label)
    total = spec.total_rate
    updated = spec.model_copy(
        update={
            "port_rate": efficiency * total,
            "internal_rate": (1.0 - efficiency) * total,
        },
    )
    return params.model_copy(update={label.value: updated})


def with_uniform_occupation(params: ChainParams, n_th: float) -> ChainParams:
    """Same bath occupation on every mode, temperature cleared."""
    if n_th < 0:
        msg = f"n_th must be non-negative, got {n_th}"
        raise InvalidParameterError(msg)
    update: dict[str, object] = {
        spec.label.value: spec.model_copy(update={"n_th": n_th})
        for spec in params.modes
    }
    update["temperature"] = None
    return params.model_copy(update=update)


def with_cooperativity(
    params: ChainParams,
    pair: str,
    value: float,
) -> ChainParams:
    """Tune α (pair "ab") or g_mb / g_mc so the cooperativity equals value."""
    if value < 0:
        msg = f"cooperativity must be non-negative, got {value}"
        raise InvalidParameterError(msg)
    match pair:
        case "ab":
            if params.g_ab <= 0:
                msg = "g_ab must be positive to set C_ab"
                raise InvalidParameterError(msg)
            big_g = math.sqrt(
                value * params.a.total_rate * params.b.total_rate,
            ) / 2.0
            return with_enhancement(params, big_g / params.g_ab)
        case "mb":
            rate = math.sqrt(value * params.m.total_rate * params.b.total_rate)
            return params.model_copy(update={"g_mb": rate / 2.0})
        case "mc":
            rate = math.sqrt(value * params.m.total_rate * params.c.total_rate)
            return params.model_copy(update={"g_mc": rate / 2.0})
        case _:
            msg = f"unknown cooperativity pair {pair!r}"
            raise InvalidParameterError(msg)
