"""Copyright (c) 2025 Natsurii.

Created Date: Tuesday, June 10th 2025, 1:05:44 pm
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
2025-06-10	NAT	Initial file creation
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.gaussian import partial_transpose, symplectic_eigenvalues
from src.core.scattering import BipartiteCov
from src.errors import InstabilityError, InvalidStateError
from src.models.chain import Cooperativities

RADICAL_TOLERANCE = 1e-12


class NegativityResult(BaseModel):
    """Smallest symplectic eigenvalue of the partial transpose and E_N."""

    model_config = ConfigDict(frozen=True)

    eta_minus: float = Field(gt=0)
    log_negativity: float = Field(ge=0)


class SteeringResult(BaseModel):
    """Rényi-2 Gaussian steering in both directions."""

    model_config = ConfigDict(frozen=True)

    a_to_c: float = Field(ge=0)
    c_to_a: float = Field(ge=0)


def _from_invariants(sigma_tilde: float, det_sigma: float) -> NegativityResult:
    radical = sigma_tilde**2 - 4.0 * det_sigma
    if radical < 0:
        if radical < -RADICAL_TOLERANCE * sigma_tilde**2:
            msg = f"unphysical covariance: Σ² - 4 det σ = {radical:.3e}"
            raise InvalidStateError(msg)
        radical = 0.0
    # η₋² = (Σ - √radical)/2 rewritten as 2 det σ / (Σ + √radical)
    upper = sigma_tilde + math.sqrt(radical)
    if upper <= 0 or det_sigma <= 0:
        msg = f"non-positive symplectic invariants Σ={sigma_tilde:.3e}"
        raise InvalidStateError(msg)
    eta = math.sqrt(2.0 * det_sigma / upper)
    return NegativityResult(eta_minus=eta, log_negativity=max(0.0, -math.log(eta)))


def log_negativity(cov: BipartiteCov) -> NegativityResult:
    """E_N = max(0, -ln η₋) from Σ = det B + det B′ - 2 det C."""
    sigma_tilde = (
        np.linalg.det(cov.first)
        + np.linalg.det(cov.second)
        - 2.0 * np.linalg.det(cov.cross)
    )
    return _from_invariants(float(sigma_tilde), float(np.linalg.det(cov.sigma)))


def general_covariance(
    a1: float,
    a2: float,
    a3: float,
    a4: float,
) -> BipartiteCov:
    """Covariance with rotated off-diagonal blocks [[a4, a3], [a3, -a4]]."""
    return BipartiteCov(
        sigma=np.array(
            [
                [a1, 0.0, a4, a3],
                [0.0, a1, a3, -a4],
                [a4, a3, a2, 0.0],
                [a3, -a4, 0.0, a2],
            ],
        ),
    )


def log_negativity_general(
    a1: float,
    a2: float,
    a3: float,
    a4: float,
) -> NegativityResult:
    """Closed-form η₋ for the rotated off-diagonal layout."""
    cross = a3**2 + a4**2
    sigma_tilde = a1**2 + a2**2 + 2.0 * cross
    spread = abs(a1 + a2) * math.sqrt((a1 - a2) ** 2 + 4.0 * cross)
    squared = (sigma_tilde - spread) / 2.0
    if squared <= 0:
        msg = f"unphysical parameters: η₋² = {squared:.3e}"
        raise InvalidStateError(msg)
    eta = math.sqrt(squared)
    return NegativityResult(eta_minus=eta, log_negativity=max(0.0, -math.log(eta)))


def negativity_oracle(cov: BipartiteCov) -> NegativityResult:
    """η₋ as the smallest symplectic eigenvalue of the partial transpose."""
    eta = float(symplectic_eigenvalues(partial_transpose(cov.sigma))[0])
    return NegativityResult(eta_minus=eta, log_negativity=max(0.0, -math.log(eta)))


def closed_form_covariance(
    coops: Cooperativities,
) -> tuple[float, float, float]:
    """Resonant output covariance entries (c1, c2, c3) from cooperativities.

    Valid at resonance, zero temperature, unit port efficiency and filter
    centre ω = Δ; the matrix is [[c1,0,0,c3],[0,c1,c3,0],[0,c3,c2,0],
    [c3,0,0,c2]].
    """
    c_ab, c_mb, c_mc = coops.c_ab, coops.c_mb, coops.c_mc
    r = 1.0 + c_mc
    p = 1.0 + c_mb + c_mc
    root = p - c_ab * r
    if root <= 0:
        msg = (
            f"C_ab={c_ab:.6g} beyond the instability boundary "
            f"{coops.boundary:.6g}"
        )
        raise InstabilityError(msg)
    denominator = root**2
    c1 = (c_ab**2 * r**2 + 6.0 * c_ab * r * p + p**2) / denominator
    c2 = (
        c_ab**2 * r**2
        + p**2
        - 2.0 * c_ab * (c_mb - 3.0 * c_mb * c_mc + r**2)
    ) / denominator
    c3 = 4.0 * math.sqrt(c_ab * c_mb * c_mc) * (p + c_ab * r) / denominator
    return c1, c2, c3


def _entropy(block: np.ndarray) -> float:
    det = float(np.linalg.det(block))
    if det <= 0:
        msg = f"non-positive determinant {det:.3e}"
        raise InvalidStateError(msg)
    return 0.5 * math.log(det)


def steering(cov: BipartiteCov) -> SteeringResult:
    """Gaussian steering max(0, S(B) - S(σ)) with S = ½ ln det."""
    joint = _entropy(cov.sigma)
    return SteeringResult(
        a_to_c=max(0.0, _entropy(cov.first) - joint),
        c_to_a=max(0.0, _entropy(cov.second) - joint),
    )
