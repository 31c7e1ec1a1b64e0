"""Deterministic table rendering for the CLI and file outputs.

CSV is the primary exchange format: comma separated, '.' decimal point,
one header row, newline line endings, no trailing delimiter.  Floats are
printed with a fixed number of significant digits so identical inputs
give byte-identical files.  A trailing summary, when present, is a single
JSON object on a '# ' comment line that CSV readers skip.
"""

from __future__ import annotations

import json
import math
from typing import Sequence


def format_cell(value, precision: int = 9) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isnan(value):
        return ""
    return f"{value:.{precision}g}"


def _rounded(value, precision: int):
    if isinstance(value, float):
        if math.isnan(value):
            return None
        return float(f"{value:.{precision}g}")
    return value


def render_csv(columns: Sequence[str], rows: Sequence[Sequence],
               precision: int = 9, footer: dict | None = None) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_cell(v, precision) for v in row))
    if footer is not None:
        lines.append("# " + json.dumps(
            {k: _rounded(v, precision) for k, v in footer.items()},
            separators=(", ", ": ")))
    return "\n".join(lines) + "\n"


def render_json(columns: Sequence[str], rows: Sequence[Sequence],
                precision: int = 9, footer: dict | None = None) -> str:
    payload: dict = {
        "rows": [{c: _rounded(v, precision) for c, v in zip(columns, row)}
                 for row in rows],
    }
    if footer is not None:
        payload["summary"] = {k: _rounded(v, precision)
                              for k, v in footer.items()}
    return json.dumps(payload, indent=2) + "\n"


def render(fmt: str, columns: Sequence[str], rows: Sequence[Sequence],
           precision: int = 9, footer: dict | None = None) -> str:
    if fmt == "csv":
        return render_csv(columns, rows, precision, footer)
    if fmt == "json":
        return render_json(columns, rows, precision, footer)
    raise ValueError(f"unknown format {fmt!r}")
