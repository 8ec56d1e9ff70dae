"""Copyright (c) 2025 Natsurii.

Created Date: Tuesday, June 10th 2025, 10:11:26 am
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
2025-06-21	NAT	Physicality on the closed-form grid
"""

import numpy as np
import pytest

from src.core.dynamics import (
    Approximation,
    DriftModel,
    build_drift,
    quadrature_transform,
)
from src.core.entanglement import (
    closed_form_covariance,
    general_covariance,
    log_negativity,
    log_negativity_general,
)
from src.core.gaussian import is_physical
from src.core.scattering import (
    SPECTRUM_COLUMNS,
    NoiseMatrix,
    OutputCovariance,
    filtered_covariance,
    noise_matrix,
    output_covariance,
    reduce_bipartite,
    scattering_matrix,
    spectrum_table,
)
from src.errors import InvalidParameterError, InvalidSelectionError, NumericalError
from src.models.chain import (
    TWO_PI,
    ChainParams,
    cooperativities,
    with_cooperativity,
    with_enhancement,
    with_port_efficiency,
)
from src.models.config import chain_from_tree
from src.models.presets import preset_tree


@pytest.fixture
def table1() -> ChainParams:
    """Resolved-sideband preset."""
    return chain_from_tree(preset_tree("table1"))


@pytest.fixture
def ideal(table1: ChainParams) -> ChainParams:
    """The table1 preset with lossless optical and microwave ports."""
    return with_port_efficiency(with_port_efficiency(table1, "a", 1.0), "c", 1.0)


@pytest.fixture
def decoupled(table1: ChainParams) -> ChainParams:
    """The table1 preset with every coupling switched off."""
    return with_enhancement(table1, 0.0).model_copy(
        update={"g_mb": 0.0, "g_mc": 0.0},
    )


def _resolved(params: ChainParams) -> DriftModel:
    return build_drift(params, approximation=Approximation.RESOLVED)


def _bare(model: DriftModel, omega: float) -> np.ndarray:
    transform = quadrature_transform(6)
    return np.linalg.inv(transform) @ scattering_matrix(model, omega) @ transform


def test_passive_chain_scatters_unitarily(decoupled: ChainParams) -> None:
    """Test that S_A is unitary when nothing is driven."""
    model = build_drift(
        decoupled.model_copy(
            update={"g_mb": TWO_PI * 10e6, "g_mc": TWO_PI * 180e6},
        ),
    )
    for omega in (decoupled.detuning, TWO_PI * 9.9e9, -TWO_PI * 3e9):
        bare = _bare(model, omega)
        np.testing.assert_allclose(bare @ bare.conj().T, np.eye(12), atol=1e-10)


@pytest.mark.parametrize("offset_hz", [0.0, 2e8, -7e8])
def test_single_port_reflection(decoupled: ChainParams, offset_hz: float) -> None:
    """Test the optical reflection against the one-mode Lorentzian."""
    params = decoupled.model_copy(update={"detuning": 0.0})
    omega = TWO_PI * offset_hz
    kappa, gamma = params.a.port_rate, params.a.internal_rate
    expected = abs(kappa - gamma + 2j * omega) / abs(kappa + gamma - 2j * omega)
    assert abs(_bare(build_drift(params), omega)[1, 1]) == pytest.approx(
        expected, rel=1e-12,
    )


def test_noise_matrix_blocks() -> None:
    """Test the Hermitian vacuum and thermal blocks."""
    noise = NoiseMatrix.from_occupations([0.0, 0.0, 3.0, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(noise.matrix, noise.matrix.conj().T)
    np.testing.assert_array_equal(noise.matrix[:2, :2], [[1, 1j], [-1j, 1]])
    assert noise.matrix[4, 4] == 7.0
    np.testing.assert_array_equal(noise.symmetric[4:6, 4:6], 7.0 * np.eye(2))


def test_noise_matrix_follows_temperature(table1: ChainParams) -> None:
    """Test that a set temperature feeds the noise diagonal."""
    noise = noise_matrix(table1.model_copy(update={"temperature": 50.6}))
    assert noise.matrix[8, 8].real == pytest.approx(2 * 104.9 + 1, rel=1e-2)


def test_vacuum_output_is_identity(decoupled: ChainParams) -> None:
    """Test that a passive chain at T = 0 emits vacuum."""
    model = build_drift(decoupled)
    for omega in (decoupled.detuning, TWO_PI * 10.001e9):
        sigma = output_covariance(model, noise_matrix(decoupled), omega).sigma
        np.testing.assert_allclose(sigma, np.eye(8), atol=1e-10)


def test_output_is_physical(ideal: ChainParams) -> None:
    """Test that the driven output is a real symmetric physical state."""
    model = _resolved(ideal)
    sigma = output_covariance(model, noise_matrix(ideal), ideal.detuning).sigma
    np.testing.assert_array_equal(sigma, sigma.T)
    assert is_physical(sigma)
    assert is_physical(
        reduce_bipartite(OutputCovariance(center_frequency=0.0, sigma=sigma)).sigma,
    )


def test_resonant_output_matches_closed_form() -> None:
    """Test the pipeline against (c1, c2, c3) over a cooperativity grid."""
    tree = preset_tree("table1")
    base = chain_from_tree(tree)
    base = with_port_efficiency(with_port_efficiency(base, "a", 1.0), "c", 1.0)
    for c_mc in np.geomspace(1.0, 1e3, 10):
        tuned = with_cooperativity(base, "mc", c_mc)
        boundary = cooperativities(tuned).boundary
        for c_ab in np.geomspace(0.1, 0.9 * boundary, 10):
            params = with_cooperativity(tuned, "ab", c_ab)
            full = output_covariance(
                _resolved(params), noise_matrix(params), params.detuning,
            )
            cov = reduce_bipartite(full)
            assert is_physical(full.sigma)
            assert is_physical(cov.sigma)
            c1, c2, c3 = closed_form_covariance(cooperativities(params))
            np.testing.assert_allclose(
                cov.sigma,
                general_covariance(c1, c2, c3, 0.0).sigma,
                rtol=1e-8,
                atol=1e-8 * c1,
            )


def test_detuned_output_keeps_general_layout(ideal: ChainParams) -> None:
    """Test the rotated cross block away from the filter resonance."""
    model = _resolved(ideal)
    omega = ideal.detuning + TWO_PI * 5e3
    cov = reduce_bipartite(output_covariance(model, noise_matrix(ideal), omega))
    sigma = cov.sigma
    scale = np.max(np.abs(sigma))
    assert sigma[0, 0] == pytest.approx(sigma[1, 1], rel=1e-9)
    assert sigma[2, 2] == pytest.approx(sigma[3, 3], rel=1e-9)
    assert abs(sigma[0, 1]) < 1e-9 * scale
    assert sigma[0, 3] == pytest.approx(sigma[1, 2], rel=1e-9)
    assert sigma[1, 3] == pytest.approx(-sigma[0, 2], rel=1e-9)
    assert abs(sigma[0, 2]) > 1e-6 * scale
    general = log_negativity_general(
        sigma[0, 0], sigma[2, 2], sigma[0, 3], sigma[0, 2],
    )
    assert general.log_negativity == pytest.approx(
        log_negativity(cov).log_negativity, rel=1e-8,
    )


def test_output_even_in_frequency(ideal: ChainParams) -> None:
    """Test that ±ω select conjugate sidebands with equal covariance."""
    model = _resolved(ideal)
    noise = noise_matrix(ideal)
    omega = ideal.detuning + TWO_PI * 2e3
    np.testing.assert_allclose(
        output_covariance(model, noise, -omega).sigma,
        output_covariance(model, noise, omega).sigma,
        rtol=1e-10,
        atol=1e-10,
    )


def test_narrow_filter_matches_point(ideal: ChainParams) -> None:
    """Test that a vanishing bandwidth reproduces the point covariance."""
    model = _resolved(ideal)
    noise = noise_matrix(ideal)
    point = output_covariance(model, noise, ideal.detuning).sigma
    filtered = filtered_covariance(model, noise, ideal.detuning, TWO_PI * 1e-3)
    assert filtered.converged
    assert np.linalg.norm(filtered.sigma - point) < 1e-6 * np.linalg.norm(point)


def test_filter_preserves_white_vacuum(decoupled: ChainParams) -> None:
    """Test that filtering vacuum returns vacuum."""
    model = build_drift(decoupled)
    filtered = filtered_covariance(
        model, noise_matrix(decoupled), decoupled.detuning, TWO_PI * 1e6,
    )
    np.testing.assert_allclose(filtered.sigma, np.eye(8), atol=1e-10)


def test_coarse_filter_flags_non_convergence(ideal: ChainParams) -> None:
    """Test that too few nodes across a sharp feature set converged=False."""
    model = _resolved(ideal)
    filtered = filtered_covariance(
        model, noise_matrix(ideal), ideal.detuning, TWO_PI * 3e5, 16,
    )
    assert not filtered.converged
    assert filtered.warnings


@pytest.mark.parametrize(("bandwidth", "points"), [(0.0, 64), (1.0, 8)])
def test_filter_rejects_bad_arguments(
    ideal: ChainParams,
    bandwidth: float,
    points: int,
) -> None:
    """Test that non-positive widths and too few nodes are rejected."""
    with pytest.raises(InvalidParameterError):
        filtered_covariance(
            _resolved(ideal), noise_matrix(ideal), 0.0, bandwidth, points,
        )


def test_singular_resolvent_raises(table1: ChainParams) -> None:
    """Test that a lossless drift evaluated on its pole fails loudly."""
    model = build_drift(table1)
    frozen = model.model_copy(update={"drift": np.zeros((8, 8), dtype=complex)})
    with pytest.raises(NumericalError):
        scattering_matrix(frozen, 0.0)


def test_reduce_bipartite_swaps_blocks() -> None:
    """Test that the pair order decides which block is B."""
    sigma = np.eye(8)
    sigma[0, 0] = sigma[1, 1] = 2.0
    sigma[0, 7] = sigma[7, 0] = 0.5
    cov = OutputCovariance(center_frequency=0.0, sigma=sigma)
    forward = reduce_bipartite(cov, ("a", "c"))
    backward = reduce_bipartite(cov, ("c", "a"))
    np.testing.assert_array_equal(forward.first, backward.second)
    np.testing.assert_array_equal(forward.cross, backward.cross.T)
    assert backward.pair == ("c", "a")


@pytest.mark.parametrize("pair", [("a", "b"), ("m", "c"), ("a", "a")])
def test_reduce_bipartite_rejects_pair(pair: tuple[str, str]) -> None:
    """Test that portless or repeated modes cannot be selected."""
    cov = OutputCovariance(center_frequency=0.0, sigma=np.eye(8))
    with pytest.raises(InvalidSelectionError):
        reduce_bipartite(cov, pair)


def test_spectrum_table_columns(ideal: ChainParams) -> None:
    """Test one record per frequency with the a-c entries."""
    model = _resolved(ideal)
    omegas = ideal.detuning + TWO_PI * np.array([-1e3, 0.0, 1e3])
    rows = spectrum_table(model, noise_matrix(ideal), omegas)
    assert len(rows) == 3
    assert list(rows[1]) == list(SPECTRUM_COLUMNS)
    assert rows[1]["freq_hz"] == pytest.approx(10e9)
    c1, _, c3 = closed_form_covariance(cooperativities(ideal))
    assert rows[1]["s_xa_xa"] == pytest.approx(c1, rel=1e-8)
    assert rows[1]["s_xa_pc"] == pytest.approx(c3, rel=1e-8)
