"""Copyright (c) 2025 Natsurii.

Created Date: Tuesday, June 10th 2025, 6:44:03 pm
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
2025-06-10	NAT	Initial test
2025-06-21	NAT	Tighter general-form tolerance
"""

import math

import numpy as np
import pytest

from src.core.entanglement import (
    closed_form_covariance,
    general_covariance,
    log_negativity,
    log_negativity_general,
    negativity_oracle,
    steering,
)
from src.core.gaussian import (
    random_gaussian_covariance,
    rotation,
    squeezer,
    two_mode_squeezed,
)
from src.core.scattering import BipartiteCov
from src.errors import InstabilityError, InvalidStateError
from src.models.chain import Cooperativities


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for random states."""
    return np.random.default_rng(7)


def _rotated_tms(r: float, nu: float, theta: float, extra: float) -> BipartiteCov:
    local = np.eye(4)
    local[2:, 2:] = rotation(theta)
    sigma = local @ (nu * two_mode_squeezed(r)) @ local.T
    sigma[2:, 2:] += extra * np.eye(2)
    return BipartiteCov(sigma=sigma)


def test_product_vacuum_is_separable() -> None:
    """Test that the vacuum has η₋ = 1 and no negativity."""
    result = log_negativity(BipartiteCov(sigma=np.eye(4)))
    assert result.eta_minus == pytest.approx(1.0)
    assert result.log_negativity == 0.0


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
def test_two_mode_squeezed_negativity(r: float) -> None:
    """Test E_N = 2r for the two-mode squeezed vacuum."""
    result = log_negativity(BipartiteCov(sigma=two_mode_squeezed(r)))
    assert result.log_negativity == pytest.approx(2 * r, rel=1e-10)
    assert result.eta_minus == pytest.approx(math.exp(-2 * r), rel=1e-10)


def test_invariant_form_matches_oracle(rng: np.random.Generator) -> None:
    """Test the determinant formula against symplectic diagonalisation."""
    for _ in range(1000):
        cov = BipartiteCov(
            sigma=random_gaussian_covariance(rng, max_squeezing=0.5),
        )
        assert log_negativity(cov).eta_minus == pytest.approx(
            negativity_oracle(cov).eta_minus, rel=1e-10,
        )


def test_general_form_matches_oracle(rng: np.random.Generator) -> None:
    """Test the closed-form η₋ on rotated, asymmetric thermal TMS states."""
    for _ in range(100):
        r, nu = rng.uniform(0, 1.5), rng.uniform(1, 2)
        theta, extra = rng.uniform(0, 2 * math.pi), rng.uniform(0, 1)
        cov = _rotated_tms(r, nu, theta, extra)
        sigma = cov.sigma
        general = log_negativity_general(
            sigma[0, 0], sigma[2, 2], sigma[0, 3], sigma[0, 2],
        )
        assert general.eta_minus == pytest.approx(
            negativity_oracle(cov).eta_minus, rel=1e-10,
        )


@pytest.mark.parametrize(
    ("a1", "a2", "a3", "a4"),
    [(1.0, 1.0, 0.0, 0.0), (5.0, 3.0, 2.5, 0.0), (4.0, 4.0, 1.0, 3.0)],
)
def test_general_form_matches_assembled(
    a1: float,
    a2: float,
    a3: float,
    a4: float,
) -> None:
    """Test the four-parameter formula against the assembled matrix."""
    assembled = log_negativity(general_covariance(a1, a2, a3, a4))
    assert log_negativity_general(a1, a2, a3, a4).eta_minus == pytest.approx(
        assembled.eta_minus, rel=1e-10,
    )


def test_local_symplectic_invariance(rng: np.random.Generator) -> None:
    """Test that local Gaussian unitaries leave E_N unchanged."""
    cov = BipartiteCov(sigma=random_gaussian_covariance(rng))
    local = np.zeros((4, 4))
    local[:2, :2] = rotation(0.3) @ squeezer(0.4)
    local[2:, 2:] = squeezer(-0.2) @ rotation(1.1)
    moved = BipartiteCov(sigma=local @ cov.sigma @ local.T)
    assert log_negativity(moved).log_negativity == pytest.approx(
        log_negativity(cov).log_negativity, rel=1e-9, abs=1e-12,
    )


def test_unphysical_state_raises() -> None:
    """Test that Σ² < 4 det σ is reported as an invalid state."""
    sigma = np.array(
        [
            [1.0, 0.0, 0.0, 2.0],
            [0.0, 1.0, -2.0, 0.0],
            [0.0, -2.0, 2.0, 0.0],
            [2.0, 0.0, 0.0, 2.0],
        ],
    )
    with pytest.raises(InvalidStateError):
        log_negativity(BipartiteCov(sigma=sigma))


def test_closed_form_without_drive() -> None:
    """Test that C_ab = 0 leaves the outputs in vacuum."""
    c1, c2, c3 = closed_form_covariance(
        Cooperativities(c_ab=0.0, c_mb=4e5, c_mc=1283.0),
    )
    assert (c1, c2, c3) == (pytest.approx(1.0), pytest.approx(1.0), 0.0)


def test_closed_form_identities() -> None:
    """Test algebraic identities of the resonant entries."""
    coops = Cooperativities(c_ab=30.0, c_mb=4e5, c_mc=1283.0)
    c1, c2, c3 = closed_form_covariance(coops)
    ratio = 1.0 + coops.c_mc
    root = 1.0 + coops.c_mb + coops.c_mc - coops.c_ab * ratio
    assert c1 - c2 == pytest.approx(
        8 * coops.c_ab * (ratio**2 + coops.c_mb) / root**2, rel=1e-9,
    )
    product = coops.c_ab * coops.c_mb * coops.c_mc
    total = 1.0 + coops.c_mb + coops.c_mc + coops.c_ab * ratio
    assert c1 + c2 - 2 * c3 == pytest.approx(
        2 * ((total - 2 * math.sqrt(product)) / root) ** 2, rel=1e-9,
    )


def test_closed_form_beyond_boundary_raises() -> None:
    """Test that C_ab past the boundary has no steady state."""
    coops = Cooperativities(c_ab=400.0, c_mb=4e5, c_mc=1283.0)
    with pytest.raises(InstabilityError):
        closed_form_covariance(coops)


def test_closed_form_entangled_near_boundary() -> None:
    """Test that E_N grows as C_ab approaches the boundary."""
    values = []
    for fraction in (0.2, 0.5, 0.8, 0.95):
        coops = Cooperativities(c_ab=fraction * 312.5, c_mb=4e5, c_mc=1283.0)
        c1, c2, c3 = closed_form_covariance(coops)
        values.append(log_negativity_general(c1, c2, c3, 0.0).log_negativity)
    assert values == sorted(values)
    assert values[0] > 0


def test_steering_of_vacuum_is_zero() -> None:
    """Test that product vacua cannot steer."""
    result = steering(BipartiteCov(sigma=np.eye(4)))
    assert (result.a_to_c, result.c_to_a) == (0.0, 0.0)


@pytest.mark.parametrize("r", [0.2, 0.8, 1.5])
def test_steering_of_two_mode_squeezed(r: float) -> None:
    """Test the symmetric steering ln cosh 2r of the squeezed vacuum."""
    result = steering(BipartiteCov(sigma=two_mode_squeezed(r)))
    assert result.a_to_c == pytest.approx(math.log(math.cosh(2 * r)), rel=1e-9)
    assert result.c_to_a == pytest.approx(result.a_to_c, rel=1e-12)
    gap = 2 * r - result.a_to_c
    assert 0 < gap < math.log(2.0)


def test_steering_bounded_by_negativity(rng: np.random.Generator) -> None:
    """Test that neither steering direction exceeds E_N on thermal TMS."""
    for _ in range(200):
        r, nu = rng.uniform(0, 1.5), rng.uniform(1, 2)
        cov = _rotated_tms(r, nu, rng.uniform(0, 2 * math.pi), 0.0)
        negativity = log_negativity(cov).log_negativity
        result = steering(cov)
        assert result.a_to_c <= negativity + 1e-9
        assert result.c_to_a <= negativity + 1e-9


def test_steering_asymmetry_from_local_noise() -> None:
    """Test that extra noise on c makes c a better steerer than target."""
    cov = _rotated_tms(0.6, 1.0, 0.0, 0.5)
    result = steering(cov)
    assert result.c_to_a > result.a_to_c


def test_steering_rejects_singular_block() -> None:
    """Test that a non-positive reduced determinant is invalid."""
    sigma = np.diag([-1.0, 1.0, 1.0, 1.0])
    with pytest.raises(InvalidStateError):
        steering(BipartiteCov(sigma=sigma))
