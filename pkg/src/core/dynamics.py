"""Copyright (c) 2025 Natsurii.

Created Date: Monday, June 9th 2025, 10:48:30 am
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
2025-06-09	NAT	Initial file creation
2025-06-12	NAT	Resolved-sideband coupling
"""

import logging
import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import linalg

from src.errors import NumericalError
from src.models.chain import ChainParams, ModeLabel, enhancement, with_enhancement

logger = logging.getLogger(__name__)

# Bare-operator basis: (a†, a, b†, b, m†, m, c†, c).
BASIS = ("a_dag", "a", "b_dag", "b", "m_dag", "m", "c_dag", "c")
A_DAG, A, B_DAG, B, M_DAG, M, C_DAG, C = range(8)

# Noise channels, each as a (†, non-†) pair of columns in the input matrix.
CHANNELS = ("a_port", "a_int", "b", "m", "c_port", "c_int")

# Channel whose output is observed for each mode.
OUTPUT_CHANNEL = {
    ModeLabel.A: 0,
    ModeLabel.B: 2,
    ModeLabel.M: 3,
    ModeLabel.C: 4,
}

STABILITY_TOLERANCE = 1e-9


class Approximation(Enum):
    """Which coupling terms the linearised drift keeps."""

    RWA = "rwa"
    FULL = "full"
    RESOLVED = "resolved"


def _partner(index: int) -> int:
    return index ^ 1


def quadrature_transform(n_modes: int) -> np.ndarray:
    """Block-diagonal map (o†, o) -> (x, p) with x = o† + o, p = i(o† - o)."""
    block = np.array([[1.0, 1.0], [1.0j, -1.0j]])
    return np.kron(np.eye(n_modes), block)


class DriftModel(BaseModel):
    """Linearised Langevin system dÂ/dt = 𝔸Â + 𝔹Â_in."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    drift: np.ndarray
    inputs: np.ndarray
    quadrature: np.ndarray
    sideband_frequencies: tuple[float, float, float, float]
    approximation: Approximation = Approximation.RWA

    @property
    def linewidth_scale(self) -> float:
        """Largest mode linewidth, sets the stability tolerance."""
        return float(-2.0 * np.min(np.real(np.diag(self.drift))))


class StabilityReport(BaseModel):
    """Eigenvalues of the drift matrix and the stability verdict."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    stable: bool
    margin: float


class HybridMode(BaseModel):
    """Eigenmode of the phonon-magnon-microwave subsystem."""

    model_config = ConfigDict(frozen=True)

    frequency: float
    linewidth: float


def _couple(drift: np.ndarray, row: int, col: int, value: complex) -> None:
    # Every entry has a mirror in the conjugate rows of the † partners.
    drift[row, col] += value
    drift[_partner(row), _partner(col)] += np.conj(value)


def build_drift(
    params: ChainParams,
    rwa: bool = True,  # noqa: FBT001, FBT002
    approximation: Approximation | None = None,
) -> DriftModel:
    """Assemble the drift, input and quadrature matrices.

    Args:
        params (ChainParams): Chain parameters.
        rwa (bool): Drop counter-rotating magnon terms.
        approximation (Approximation | None): Explicit choice, overrides rwa.

    Returns:
        DriftModel: 8×8 drift, 8×12 input matrix and quadrature transform.

    """
    if approximation is None:
        approximation = Approximation.RWA if rwa else Approximation.FULL

    drift = np.zeros((8, 8), dtype=complex)
    _couple(drift, A, A, 1j * params.detuning - params.a.total_rate / 2)
    _couple(drift, B, B, -1j * params.b.frequency - params.b.total_rate / 2)
    _couple(drift, M, M, -1j * params.m.frequency - params.m.total_rate / 2)
    _couple(drift, C, C, -1j * params.c.frequency - params.c.total_rate / 2)

    big_g = enhancement(params) * params.g_ab
    if approximation is Approximation.RESOLVED:
        _couple(drift, A, B_DAG, -1j * big_g)
        _couple(drift, B, A_DAG, -1j * big_g)
    else:
        for row, cols in ((A, (B, B_DAG)), (B, (A, A_DAG))):
            for col in cols:
                _couple(drift, row, col, -1j * big_g)

    _couple(drift, M, B, -1j * params.g_mb)
    _couple(drift, B, M, -1j * params.g_mb)
    _couple(drift, M, C, -1j * params.g_mc)
    _couple(drift, C, M, -1j * params.g_mc)
    if approximation is Approximation.FULL:
        _couple(drift, M, B_DAG, -1j * params.g_mb)
        _couple(drift, B, M_DAG, -1j * params.g_mb)
        _couple(drift, M, C_DAG, -1j * params.g_mc)
        _couple(drift, C, M_DAG, -1j * params.g_mc)

    inputs = np.zeros((8, 12))
    rates = (
        (A, 0, params.a.port_rate),
        (A, 1, params.a.internal_rate),
        (B, 2, params.b.total_rate),
        (M, 3, params.m.total_rate),
        (C, 4, params.c.port_rate),
        (C, 5, params.c.internal_rate),
    )
    for row, channel, rate in rates:
        inputs[row - 1, 2 * channel] = -math.sqrt(rate)
        inputs[row, 2 * channel + 1] = -math.sqrt(rate)

    return DriftModel(
        drift=drift,
        inputs=inputs,
        quadrature=quadrature_transform(4),
        sideband_frequencies=(
            -params.detuning,
            params.b.frequency,
            params.m.frequency,
            params.c.frequency,
        ),
        approximation=approximation,
    )


def stability(model: DriftModel) -> StabilityReport:
    """Classify the steady state from the eigenvalues of the drift."""
    try:
        eigenvalues = linalg.eigvals(model.drift)
    except (linalg.LinAlgError, ValueError) as exc:
        cond = np.linalg.cond(model.drift)
        msg = f"eigen-solver failed (condition number {cond:.3e}): {exc}"
        raise NumericalError(msg) from exc
    margin = float(np.max(eigenvalues.real))
    tolerance = STABILITY_TOLERANCE * model.linewidth_scale
    return StabilityReport(
        eigenvalues=eigenvalues,
        stable=margin < -tolerance,
        margin=margin,
    )


def hybrid_mode_frequencies(params: ChainParams) -> list[HybridMode]:
    """Normal modes of b-m-c with the optics decoupled, sorted by frequency."""
    model = build_drift(with_enhancement(params, 0.0), rwa=True)
    block = model.drift[B_DAG:, B_DAG:]
    eigenvalues = linalg.eigvals(block)
    positive = sorted(
        (value for value in eigenvalues if value.imag > 0),
        key=lambda value: value.imag,
    )
    return [
        HybridMode(frequency=float(value.imag), linewidth=float(-2 * value.real))
        for value in positive
    ]
