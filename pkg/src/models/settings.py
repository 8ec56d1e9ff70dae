"""Copyright (c) 2025 Natsurii.

Created Date: Monday, June 16th 2025, 8:55:20 pm
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
2025-06-16	NAT	Initial file creation
2025-06-21	NAT	Restrict log level to logging names
"""

import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from src.errors import ConfigError

ENV_PREFIX = "MAGNOCHAIN_"


class Settings(BaseModel):
    """Runtime defaults, overridable from the environment or a .env file."""

    jobs: int = Field(default=1, ge=1)
    output_format: str = Field(default="csv", pattern="^(csv|json)$")
    quadrature_points: int = Field(default=64, ge=16)
    log_level: str = Field(
        default="WARNING", pattern="^(CRITICAL|ERROR|WARNING|INFO|DEBUG)$",
    )


def load_settings(*, dotenv: bool = True) -> Settings:
    """Read ``MAGNOCHAIN_*`` variables, loading a .env file first."""
    if dotenv:
        load_dotenv()
    raw = {
        "jobs": os.environ.get(f"{ENV_PREFIX}JOBS"),
        "output_format": os.environ.get(f"{ENV_PREFIX}FORMAT"),
        "quadrature_points": os.environ.get(f"{ENV_PREFIX}QUADRATURE_POINTS"),
        "log_level": os.environ.get(f"{ENV_PREFIX}LOG_LEVEL"),
    }
    try:
        return Settings(**{k: v for k, v in raw.items() if v is not None})
    except ValidationError as exc:
        msg = f"invalid environment settings: {exc.errors()[0]['msg']}"
        raise ConfigError(msg, ENV_PREFIX) from exc
