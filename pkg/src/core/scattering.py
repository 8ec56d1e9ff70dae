"""Copyright (c) 2025 Natsurii.

Created Date: Monday, June 9th 2025, 4:12:09 pm
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
"""

import logging

import numpy as np
from numpy.polynomial.hermite import hermgauss
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import linalg

from src.core.dynamics import OUTPUT_CHANNEL, DriftModel, quadrature_transform
from src.errors import (
    ConsistencyError,
    InvalidParameterError,
    InvalidSelectionError,
    NumericalError,
)
from src.models.chain import (
    PORTLESS,
    TWO_PI,
    ChainParams,
    ModeLabel,
    effective_occupations,
)

logger = logging.getLogger(__name__)

MODE_ORDER = (ModeLabel.A, ModeLabel.B, ModeLabel.M, ModeLabel.C)

# Bath feeding each of the twelve noise columns, in channel order.
CHANNEL_BATH = (
    ModeLabel.A,
    ModeLabel.A,
    ModeLabel.B,
    ModeLabel.M,
    ModeLabel.C,
    ModeLabel.C,
)

RESIDUE_TOLERANCE = 1e-8
MIN_QUADRATURE_POINTS = 16
CONVERGENCE_TOLERANCE = 1e-6


class NoiseMatrix(BaseModel):
    """White-noise correlations of the twelve input channels (x, p basis)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @classmethod
    def from_occupations(cls, occupations: list[float]) -> "NoiseMatrix":
        """Blocks [[2n+1, i], [-i, 2n+1]], one per channel."""
        blocks = [
            np.array([[2 * n + 1, 1j], [-1j, 2 * n + 1]]) for n in occupations
        ]
        return cls(matrix=linalg.block_diag(*blocks))

    @property
    def symmetric(self) -> np.ndarray:
        """Symmetric part ½(N + Nᵀ), the anticommutator correlations."""
        return 0.5 * (self.matrix + self.matrix.T)


class OutputCovariance(BaseModel):
    """Covariance of the filtered output quadratures (x_a, p_a, ..., p_c)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    center_frequency: float
    sigma: np.ndarray
    bandwidth: float = 0.0
    converged: bool = True
    warnings: tuple[str, ...] = ()


class BipartiteCov(BaseModel):
    """Covariance of a mode pair with blocks B, B′ and cross block C."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sigma: np.ndarray
    pair: tuple[str, str] = Field(default=("a", "c"))

    @field_validator("sigma")
    @classmethod
    def check_shape(cls, sigma: np.ndarray) -> np.ndarray:
        """Accept only real symmetric 4×4 matrices."""
        sigma = np.asarray(sigma, dtype=float)
        if sigma.shape != (4, 4):
            msg = f"expected a 4x4 covariance, got {sigma.shape}"
            raise ValueError(msg)
        if not np.allclose(sigma, sigma.T, rtol=1e-12, atol=1e-12):
            msg = "covariance must be symmetric"
            raise ValueError(msg)
        return 0.5 * (sigma + sigma.T)

    @property
    def first(self) -> np.ndarray:
        """Block B of the first mode."""
        return self.sigma[:2, :2]

    @property
    def second(self) -> np.ndarray:
        """Block B′ of the second mode."""
        return self.sigma[2:, 2:]

    @property
    def cross(self) -> np.ndarray:
        """Cross-correlation block C."""
        return self.sigma[:2, 2:]


def noise_matrix(params: ChainParams) -> NoiseMatrix:
    """Noise matrix from the effective bath occupations."""
    occupations = effective_occupations(params)
    return NoiseMatrix.from_occupations(
        [occupations[bath] for bath in CHANNEL_BATH],
    )


def _bare_scattering(model: DriftModel, omega: float) -> np.ndarray:
    resolvent = 1j * omega * np.eye(8) + model.drift
    try:
        factors = linalg.lu_factor(resolvent, check_finite=True)
    except (linalg.LinAlgError, ValueError) as exc:
        msg = f"resolvent factorisation failed at omega={omega:.6e}"
        raise NumericalError(msg) from exc
    pivots = np.abs(np.diag(factors[0]))
    if np.min(pivots) <= np.finfo(float).eps * np.max(pivots):
        eigenvalues = linalg.eigvals(model.drift)
        pole = eigenvalues[np.argmin(np.abs(eigenvalues + 1j * omega))]
        msg = f"singular resolvent at omega={omega:.6e}, eigenvalue {pole:.6e}"
        raise NumericalError(msg)
    solved = linalg.lu_solve(factors, model.inputs.astype(complex))
    return np.eye(12) + model.inputs.T @ solved


def scattering_matrix(model: DriftModel, omega: float) -> np.ndarray:
    """Scattering matrix S_R[ω] = Q₁₂ S_A[ω] Q₁₂⁻¹ in the quadrature basis."""
    q12 = quadrature_transform(6)
    return q12 @ _bare_scattering(model, omega) @ linalg.inv(q12)


def _sideband_rows(
    model: DriftModel,
    omega: float,
) -> tuple[list[int], list[int]]:
    rows: list[int] = []
    signs: list[int] = []
    for label, nu in zip(MODE_ORDER, model.sideband_frequencies, strict=True):
        channel = OUTPUT_CHANNEL[label]
        if nu * omega >= 0:
            rows.append(2 * channel + 1)
            signs.append(-1)
        else:
            rows.append(2 * channel)
            signs.append(1)
    return rows, signs


def output_covariance(
    model: DriftModel,
    noise: NoiseMatrix,
    omega: float,
) -> OutputCovariance:
    """Output covariance of the four modes at frequency ``omega``.

    Each output is taken at the sideband resonant with ``omega`` and the
    result is the symmetrised product ½(S̃ N S̃† + S̃* N S̃ᵀ) with the
    symmetric part of the noise matrix.
    """
    return OutputCovariance(
        center_frequency=omega,
        sigma=_spectral_covariance(model, noise, omega),
    )


def _spectral_covariance(
    model: DriftModel,
    noise: NoiseMatrix,
    omega: float,
) -> np.ndarray:
    rows, signs = _sideband_rows(model, omega)
    kernel = _bare_scattering(model, omega)[rows, :]
    weights = linalg.block_diag(
        *(np.array([[1.0], [1j * sign]]) for sign in signs),
    )
    reduced = (
        np.sqrt(2.0) * weights @ kernel @ linalg.inv(quadrature_transform(6))
    )
    n_sym = noise.symmetric
    sigma = 0.5 * (
        reduced @ n_sym @ reduced.conj().T + reduced.conj() @ n_sym @ reduced.T
    )
    scale = np.linalg.norm(sigma)
    residue = np.max(np.abs(sigma.imag))
    if residue > RESIDUE_TOLERANCE * scale:
        msg = f"imaginary residue {residue:.3e} exceeds tolerance"
        raise ConsistencyError(msg)
    sigma = sigma.real
    return 0.5 * (sigma + sigma.T)


def _gauss_hermite_average(
    model: DriftModel,
    noise: NoiseMatrix,
    omega: float,
    bandwidth: float,
    points: int,
) -> np.ndarray:
    nodes, weights = hermgauss(points)
    total = np.zeros((8, 8))
    for node, weight in zip(nodes, weights, strict=True):
        total += weight * _spectral_covariance(
            model, noise, omega + bandwidth * node,
        )
    return total / np.sqrt(np.pi)


def filtered_covariance(
    model: DriftModel,
    noise: NoiseMatrix,
    omega: float,
    bandwidth: float,
    quadrature_points: int = 64,
) -> OutputCovariance:
    """Output covariance averaged over a normalised Gaussian filter.

    Args:
        model (DriftModel): Drift model of a stable chain.
        noise (NoiseMatrix): Input noise correlations.
        omega (float): Filter centre, rad/s.
        bandwidth (float): Filter width σ_f, rad/s.
        quadrature_points (int): Gauss-Hermite order, at least 16.

    Returns:
        OutputCovariance: Filtered covariance; ``converged`` is False when
        doubling the order changes the result by more than 1e-6.

    """
    if bandwidth <= 0:
        msg = f"filter bandwidth must be positive, got {bandwidth}"
        raise InvalidParameterError(msg)
    if quadrature_points < MIN_QUADRATURE_POINTS:
        msg = f"need at least {MIN_QUADRATURE_POINTS} quadrature points"
        raise InvalidParameterError(msg)

    sigma = _gauss_hermite_average(
        model, noise, omega, bandwidth, quadrature_points,
    )
    refined = _gauss_hermite_average(
        model, noise, omega, bandwidth, 2 * quadrature_points,
    )
    change = np.linalg.norm(refined - sigma) / np.linalg.norm(refined)
    warnings: tuple[str, ...] = ()
    if change > CONVERGENCE_TOLERANCE:
        warning = (
            f"filter quadrature not converged: relative change {change:.2e} "
            f"on doubling {quadrature_points} points"
        )
        logger.warning(warning)
        warnings = (warning,)
    return OutputCovariance(
        center_frequency=omega,
        sigma=sigma,
        bandwidth=bandwidth,
        converged=not warnings,
        warnings=warnings,
    )


def reduce_bipartite(
    cov: OutputCovariance,
    pair: tuple[str, str] = ("a", "c"),
) -> BipartiteCov:
    """Select the 4×4 covariance of two distinct port modes."""
    labels = [ModeLabel(name) for name in pair]
    if labels[0] is labels[1]:
        msg = f"pair must name two distinct modes, got {pair}"
        raise InvalidSelectionError(msg)
    for label in labels:
        if label in PORTLESS:
            msg = f"mode {label.value} has no output port"
            raise InvalidSelectionError(msg)
    index = []
    for label in labels:
        offset = 2 * MODE_ORDER.index(label)
        index.extend((offset, offset + 1))
    return BipartiteCov(
        sigma=cov.sigma[np.ix_(index, index)],
        pair=(labels[0].value, labels[1].value),
    )


SPECTRUM_COLUMNS = (
    "freq_hz",
    "s_xa_xa",
    "s_xa_pa",
    "s_pa_pa",
    "s_xa_xc",
    "s_xa_pc",
    "s_pa_xc",
    "s_pa_pc",
    "s_xc_xc",
    "s_xc_pc",
    "s_pc_pc",
)


def spectrum_table(
    model: DriftModel,
    noise: NoiseMatrix,
    omegas: np.ndarray,
) -> list[dict[str, float]]:
    """One record per frequency with the independent a-c entries."""
    records = []
    for omega in omegas:
        sigma = reduce_bipartite(output_covariance(model, noise, omega)).sigma
        entries = (
            sigma[0, 0],
            sigma[0, 1],
            sigma[1, 1],
            sigma[0, 2],
            sigma[0, 3],
            sigma[1, 2],
            sigma[1, 3],
            sigma[2, 2],
            sigma[2, 3],
            sigma[3, 3],
        )
        record = {"freq_hz": float(omega / TWO_PI)}
        record.update(
            zip(SPECTRUM_COLUMNS[1:], map(float, entries), strict=True),
        )
        records.append(record)
    return records
