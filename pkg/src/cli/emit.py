"""Copyright (c) 2025 Natsurii.

Created Date: Saturday, June 14th 2025, 11:03:55 am
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
2025-06-14	NAT	Initial file creation
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any


def _cell(value: Any) -> str:  # noqa: ANN401
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)


def render_csv(columns: list[str], rows: list[dict[str, Any]]) -> str:
    """CSV text with a header row; floats keep full precision."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(name)) for name in columns])
    return buffer.getvalue()


def render_json(columns: list[str], rows: list[dict[str, Any]]) -> str:
    """JSON array of records in column order."""
    records = [{name: row.get(name) for name in columns} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def write_table(
    columns: list[str],
    rows: list[dict[str, Any]],
    output_format: str = "csv",
    out: str | Path | None = None,
) -> None:
    """Write a table to ``out`` or stdout.

    Args:
        columns (list[str]): Column order.
        rows (list[dict]): Records keyed by column.
        output_format (str): ``csv`` or ``json``.
        out (str | Path | None): Destination file, stdout when None.

    """
    match output_format:
        case "csv":
            text = render_csv(columns, rows)
        case "json":
            text = render_json(columns, rows)
        case _:
            msg = f"unsupported format {output_format!r}"
            raise ValueError(msg)
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
