"""Copyright (c) 2025 Natsurii.

Created Date: Sunday, June 8th 2025, 2:15:03 pm
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
"""

import copy
from typing import Any

# Resolved-sideband working point: every mode at the 10 GHz phonon frequency.
TABLE1: dict[str, Any] = {
    "modes": {
        "a": {
            "freq_hz": 200e12,
            "gamma_hz": 0.1e9,
            "kappa_out_hz": 1e9,
            "n_th": 0.0,
        },
        "b": {"freq_hz": 10e9, "gamma_hz": 1e3, "kappa_out_hz": 0.0, "n_th": 0.0},
        "m": {"freq_hz": 10e9, "gamma_hz": 1e6, "kappa_out_hz": 0.0, "n_th": 0.0},
        "c": {
            "freq_hz": 10e9,
            "gamma_hz": 1e6,
            "kappa_out_hz": 100e6,
            "n_th": 0.0,
        },
    },
    "couplings": {"g_ab_hz": 0.2e6, "g_mb_hz": 10e6, "g_mc_hz": 180e6},
    "drive": {"alpha": 42.0},
    "detuning_hz": 10e9,
    "temperature_k": None,
}

# YIG disk working point, unresolved optical sideband.
TABLE2: dict[str, Any] = {
    "modes": {
        "a": {
            "freq_hz": 193.5e12,
            "gamma_hz": 1e9,
            "kappa_out_hz": 99e9,
            "n_th": 0.0,
        },
        "b": {
            "freq_hz": 0.567e9,
            "gamma_hz": 5e3,
            "kappa_out_hz": 0.0,
            "n_th": 0.0,
        },
        "m": {
            "freq_hz": 0.567e9,
            "gamma_hz": 5e6,
            "kappa_out_hz": 0.0,
            "n_th": 0.0,
        },
        "c": {
            "freq_hz": 0.567e9,
            "gamma_hz": 0.01e6,
            "kappa_out_hz": 0.99e6,
            "n_th": 0.0,
        },
    },
    "couplings": {"g_ab_hz": 1e3, "g_mb_hz": 5e6, "g_mc_hz": 10e6},
    "drive": {"alpha": 1.0},
    "detuning_hz": 0.567e9,
    "temperature_k": None,
}

PRESETS: dict[str, dict[str, Any]] = {"table1": TABLE1, "table2": TABLE2}


def preset_tree(name: str) -> dict[str, Any]:
    """Return a private copy of the named preset tree."""
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        msg = f"unknown preset {name!r}; choose from {sorted(PRESETS)}"
        raise KeyError(msg) from None
