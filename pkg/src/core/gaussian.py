"""Copyright (c) 2025 Natsurii.

Created Date: Tuesday, June 10th 2025, 9:20:14 am
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

import numpy as np

PHYSICALITY_TOLERANCE = 1e-8


def symplectic_form(n_modes: int) -> np.ndarray:
    """Ω = ⊕ [[0, 1], [-1, 0]] over ``n_modes`` modes."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Moduli of the eigenvalues of iΩσ, one per mode, ascending."""
    n_modes = sigma.shape[0] // 2
    values = np.abs(np.linalg.eigvals(1j * symplectic_form(n_modes) @ sigma))
    return np.sort(values)[::2]


def partial_transpose(sigma: np.ndarray) -> np.ndarray:
    """Flip the momentum of the last mode (p → -p)."""
    flip = np.ones(sigma.shape[0])
    flip[-1] = -1.0
    return sigma * np.outer(flip, flip)


def is_physical(sigma: np.ndarray, tol: float = PHYSICALITY_TOLERANCE) -> bool:
    """All symplectic eigenvalues at least 1 (vacuum = identity)."""
    return bool(np.min(symplectic_eigenvalues(sigma)) >= 1.0 - tol)


def rotation(theta: float) -> np.ndarray:
    """Phase-space rotation by ``theta``."""
    cos, sin = np.cos(theta), np.sin(theta)
    return np.array([[cos, sin], [-sin, cos]])


def squeezer(r: float) -> np.ndarray:
    """Single-mode squeezer diag(e^r, e^-r)."""
    return np.diag([np.exp(r), np.exp(-r)])


def two_mode_squeezed(r: float) -> np.ndarray:
    """Covariance of the two-mode squeezed vacuum with squeezing ``r``."""
    ch, sh = np.cosh(2 * r), np.sinh(2 * r)
    return np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ],
    )


def _local(rng: np.random.Generator, max_squeezing: float) -> np.ndarray:
    return (
        rotation(rng.uniform(0, 2 * np.pi))
        @ squeezer(rng.uniform(-max_squeezing, max_squeezing))
        @ rotation(rng.uniform(0, 2 * np.pi))
    )


def random_gaussian_covariance(
    rng: np.random.Generator,
    max_squeezing: float = 1.0,
    max_thermal: float = 3.0,
) -> np.ndarray:
    """Random physical two-mode covariance S D Sᵀ.

    S chains local rotation-squeeze-rotation stages around a beam splitter
    and a two-mode squeezer; D = diag(ν₁, ν₁, ν₂, ν₂) with ν ≥ 1.
    """
    angle = rng.uniform(0, 2 * np.pi)
    mixer = np.block(
        [
            [np.cos(angle) * np.eye(2), np.sin(angle) * np.eye(2)],
            [-np.sin(angle) * np.eye(2), np.cos(angle) * np.eye(2)],
        ],
    )
    # The two-mode squeezer for r/2 has the same layout as TMS(r).
    entangler = two_mode_squeezed(rng.uniform(0, max_squeezing) / 2)
    before = np.eye(4)
    before[:2, :2] = _local(rng, max_squeezing)
    before[2:, 2:] = _local(rng, max_squeezing)
    after = np.eye(4)
    after[:2, :2] = _local(rng, max_squeezing)
    after[2:, 2:] = _local(rng, max_squeezing)
    symplectic = after @ entangler @ mixer @ before
    nu = rng.uniform(1.0, max_thermal, size=2)
    thermal = np.diag(np.repeat(nu, 2))
    sigma = symplectic @ thermal @ symplectic.T
    return 0.5 * (sigma + sigma.T)
