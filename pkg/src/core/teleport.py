"""Copyright (c) 2025 Natsurii.

Created Date: Wednesday, June 11th 2025, 7:41:02 pm
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
2025-06-11	NAT	Initial file creation
2025-06-15	NAT	Monte Carlo diagnostic
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import integrate, linalg

from src.core.dynamics import Approximation, build_drift, stability
from src.core.entanglement import log_negativity
from src.core.gaussian import is_physical, two_mode_squeezed
from src.core.scattering import (
    BipartiteCov,
    filtered_covariance,
    noise_matrix,
    output_covariance,
    reduce_bipartite,
)
from src.errors import DegenerateResourceError, InstabilityError, InvalidStateError
from src.models.chain import ChainParams

logger = logging.getLogger(__name__)

Z = np.diag([1.0, -1.0])
CONDITION_LIMIT = 1e12
GRID_EXTENT = 12.0
GRID_POINTS = 601
MC_BATCH = 10**6


class InputState(BaseModel):
    """Gaussian input state to be teleported."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sigma0: np.ndarray = Field(default_factory=lambda: np.eye(2))
    displacement: np.ndarray = Field(default_factory=lambda: np.zeros(2))

    @field_validator("sigma0")
    @classmethod
    def check_sigma0(cls, sigma0: np.ndarray) -> np.ndarray:
        """Require a physical, symmetric single-mode covariance."""
        sigma0 = np.asarray(sigma0, dtype=float)
        if sigma0.shape != (2, 2) or not np.allclose(sigma0, sigma0.T):
            msg = "sigma0 must be a symmetric 2x2 matrix"
            raise ValueError(msg)
        if not is_physical(sigma0):
            msg = "sigma0 violates the uncertainty principle"
            raise ValueError(msg)
        return sigma0

    @field_validator("displacement")
    @classmethod
    def check_displacement(cls, displacement: np.ndarray) -> np.ndarray:
        """Require a phase-space 2-vector."""
        displacement = np.asarray(displacement, dtype=float)
        if displacement.shape != (2,):
            msg = "displacement must be a 2-vector"
            raise ValueError(msg)
        return displacement

    @classmethod
    def coherent(cls, displacement: np.ndarray | None = None) -> "InputState":
        """Coherent state, σ₀ = identity."""
        if displacement is None:
            return cls()
        return cls(displacement=displacement)

    @classmethod
    def squeezed(cls, r_in: float) -> "InputState":
        """Squeezed vacuum σ₀ = diag(e^{2r}, e^{-2r})."""
        return cls(sigma0=np.diag([math.exp(2 * r_in), math.exp(-2 * r_in)]))


class TeleportResult(BaseModel):
    """Output of one teleportation run."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sigma_out: np.ndarray
    displacement_map: np.ndarray
    fidelity: float
    receiver_rotation: np.ndarray
    q2z_det: float


def receiver_alignment(resource: BipartiteCov) -> np.ndarray:
    """Proper rotation R on the receiver making σ_z C Rᵀ symmetric."""
    u, _, vt = linalg.svd(Z @ resource.cross)
    fix = np.diag([1.0, np.sign(linalg.det(u @ vt)) or 1.0])
    return u @ fix @ vt


def _checked_inverse(matrix: np.ndarray, name: str) -> np.ndarray:
    cond = np.linalg.cond(matrix)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        msg = f"{name} is singular; the resource shares no usable correlation"
        raise DegenerateResourceError(msg)
    return linalg.inv(matrix)


def teleport_output(
    resource: BipartiteCov,
    state: InputState,
) -> TeleportResult:
    """Teleport ``state`` through ``resource`` (sender first, receiver second).

    Args:
        resource (BipartiteCov): Shared two-mode resource.
        state (InputState): Input to be teleported.

    Returns:
        TeleportResult: σ_out = 𝐀⁻¹, U = Rᵀ(-2𝐀𝐁⁻¹) and the overlap fidelity.

    """
    rot = receiver_alignment(resource)
    frame = linalg.block_diag(np.eye(2), rot)
    aligned = frame @ resource.sigma @ frame.T

    inverse = _checked_inverse(aligned, "resource covariance")
    a2, a23 = inverse[:2, :2], inverse[:2, 2:]
    a32, a3 = inverse[2:, :2], inverse[2:, 2:]
    p0 = linalg.inv(state.sigma0)

    q2z = np.block(
        [
            [a2 + Z @ p0 @ Z, Z @ p0 - a23],
            [p0 @ Z - a32, a3 + p0],
        ],
    )
    q2z_inverse = _checked_inverse(q2z, "Q2z")
    b2, b23 = q2z_inverse[:2, :2], q2z_inverse[:2, 2:]
    b32, b3 = q2z_inverse[2:, :2], q2z_inverse[2:, 2:]

    kernel_a = a3 - (
        a32 @ b2 @ a23
        - a32 @ b23 @ a3
        - a3 @ b32 @ a23
        + a3 @ b3 @ a3
    )
    kernel_b = -2.0 * p0 @ (
        -Z @ b2 @ a23 + Z @ b23 @ a3 - b32 @ a23 + b3 @ a3
    )
    sigma_out = linalg.inv(kernel_a)
    sigma_out = 0.5 * (sigma_out + sigma_out.T)
    aligned_map = -2.0 * kernel_a @ _checked_inverse(kernel_b, "B kernel")

    return TeleportResult(
        sigma_out=sigma_out,
        displacement_map=rot.T @ aligned_map,
        fidelity=gaussian_fidelity(state.sigma0, sigma_out, np.zeros(2)),
        receiver_rotation=rot,
        q2z_det=float(linalg.det(q2z)),
    )


def gaussian_fidelity(
    sigma0: np.ndarray,
    sigma_out: np.ndarray,
    mean_offset: np.ndarray,
) -> float:
    """Overlap 4π∫W₀W_out = 2 exp(-½ dᵀ(σ₀+σ)⁻¹d) / √det(σ₀+σ)."""
    total = np.asarray(sigma0) + np.asarray(sigma_out)
    det = float(linalg.det(total))
    if det <= 0:
        msg = f"singular covariance sum, det={det:.3e}"
        raise InvalidStateError(msg)
    offset = np.asarray(mean_offset, dtype=float)
    exponent = -0.5 * offset @ linalg.solve(total, offset)
    return float(2.0 * math.exp(exponent) / math.sqrt(det))


def determinant_fidelity(
    resource: BipartiteCov,
    state: InputState,
    result: TeleportResult,
) -> float:
    """Determinant form 2 / (det σ₀ √(det σ₂₃ det Q₂z det(𝐀 + σ₀⁻¹)))."""
    kernel_a = linalg.inv(result.sigma_out)
    product = (
        linalg.det(resource.sigma)
        * result.q2z_det
        * linalg.det(kernel_a + linalg.inv(state.sigma0))
    )
    if product <= 0:
        msg = f"non-positive determinant product {product:.3e}"
        raise InvalidStateError(msg)
    return float(2.0 / (linalg.det(state.sigma0) * math.sqrt(product)))


def _wigner(sigma: np.ndarray, xx: np.ndarray, pp: np.ndarray) -> np.ndarray:
    inverse = linalg.inv(sigma)
    quad = (
        inverse[0, 0] * xx**2
        + 2.0 * inverse[0, 1] * xx * pp
        + inverse[1, 1] * pp**2
    )
    return np.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(linalg.det(sigma)))


def wigner_overlap_fidelity(
    sigma0: np.ndarray,
    sigma_out: np.ndarray,
    mean_offset: np.ndarray | None = None,
    extent: float = GRID_EXTENT,
    points: int = GRID_POINTS,
) -> float:
    """Brute-force 4π∫W₀W_out on a square grid (trapezoid rule)."""
    axis = np.linspace(-extent, extent, points)
    xx, pp = np.meshgrid(axis, axis, indexing="ij")
    offset = np.zeros(2) if mean_offset is None else np.asarray(mean_offset)
    integrand = _wigner(np.asarray(sigma0), xx, pp) * _wigner(
        np.asarray(sigma_out), xx - offset[0], pp - offset[1],
    )
    inner = integrate.trapezoid(integrand, axis, axis=1)
    return float(4.0 * math.pi * integrate.trapezoid(inner, axis))


def monte_carlo_fidelity(
    resource: BipartiteCov,
    state: InputState,
    samples: int = 10**7,
    seed: int = 0,
) -> float:
    """Sampled fidelity over the resource Wigner function (slow diagnostic).

    Unit-gain teleportation adds v = x₃ - σ_z x₂ to the input; the input
    integral is done analytically and the remaining four dimensions are
    sampled from the aligned resource.
    """
    rot = receiver_alignment(resource)
    frame = linalg.block_diag(np.eye(2), rot)
    aligned = frame @ resource.sigma @ frame.T
    rng = np.random.default_rng(seed)
    doubled = 2.0 * state.sigma0
    inverse = linalg.inv(doubled)
    total = 0.0
    remaining = samples
    while remaining > 0:
        size = min(remaining, MC_BATCH)
        draws = rng.multivariate_normal(np.zeros(4), aligned, size=size)
        added = draws[:, 2:] - draws[:, :2] @ Z
        exponent = -0.5 * np.einsum("ni,ij,nj->n", added, inverse, added)
        total += float(np.sum(np.exp(exponent)))
        remaining -= size
    return 2.0 * total / samples / math.sqrt(linalg.det(doubled))


class BenchmarkRow(BaseModel):
    """One point of the fidelity-versus-negativity benchmark."""

    model_config = ConfigDict(frozen=True)

    r_in: float
    log_negativity: float
    r_resource: float
    fidelity_closed_form: float
    fidelity_oracle: float | None = None


def fidelity_vs_negativity_benchmark(
    r_in_values: list[float],
    negativity_grid: list[float],
    *,
    oracle: bool = True,
) -> list[BenchmarkRow]:
    """Teleportation fidelity through TMS resources with r = E_N / 2."""
    rows = []
    for r_in in r_in_values:
        state = InputState.squeezed(r_in)
        for target in negativity_grid:
            resource = BipartiteCov(sigma=two_mode_squeezed(target / 2.0))
            result = teleport_output(resource, state)
            check = None
            if oracle:
                check = wigner_overlap_fidelity(state.sigma0, result.sigma_out)
            rows.append(
                BenchmarkRow(
                    r_in=r_in,
                    log_negativity=log_negativity(resource).log_negativity,
                    r_resource=target / 2.0,
                    fidelity_closed_form=result.fidelity,
                    fidelity_oracle=check,
                ),
            )
    return rows


def chain_resource(
    params: ChainParams,
    omega: float | None = None,
    bandwidth: float | None = None,
    *,
    approximation: Approximation = Approximation.RWA,
    quadrature_points: int = 64,
) -> BipartiteCov:
    """Optical-microwave output covariance of a stable chain."""
    model = build_drift(params, approximation=approximation)
    report = stability(model)
    if not report.stable:
        msg = f"chain is unstable, margin {report.margin:.6e} rad/s"
        raise InstabilityError(msg)
    noise = noise_matrix(params)
    center = params.detuning if omega is None else omega
    if bandwidth:
        cov = filtered_covariance(
            model, noise, center, bandwidth, quadrature_points,
        )
    else:
        cov = output_covariance(model, noise, center)
    return reduce_bipartite(cov, ("a", "c"))


def chain_teleport_fidelity(  # noqa: PLR0913
    params: ChainParams,
    state: InputState,
    omega: float | None = None,
    bandwidth: float | None = None,
    *,
    approximation: Approximation = Approximation.RWA,
    quadrature_points: int = 64,
) -> TeleportResult:
    """Drift, filtered output, a-c reduction and teleportation in one call."""
    resource = chain_resource(
        params,
        omega,
        bandwidth,
        approximation=approximation,
        quadrature_points=quadrature_points,
    )
    return teleport_output(resource, state)
