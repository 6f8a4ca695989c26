"""CSV and JSON rendering of command tables; the same rows always give the same bytes."""

import csv
import io
import json
from typing import Dict, List

from .constants import CSV_DIGITS

COLUMNS = {
    "branch": ["tau", "lambda", "alpha", "lambda_prime"],
    "spectrum": ["tau", "j", "mu", "sqrt_abs_mu", "bracket_lo", "bracket_hi", "equation_residual"],
    "eigenfunction": ["x", "phi_raw", "phi_sup_one"],
    "verify": ["name", "status", "measured", "limit"],
}


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{CSV_DIGITS}g")
    return str(value)


def render_csv(command: str, rows: List[Dict]) -> str:
    buffer = io.StringIO()
    columns = COLUMNS[command]
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({column: format_value(row[column]) for column in columns})
    return buffer.getvalue()


def render_json(meta: Dict, rows: List[Dict]) -> str:
    return json.dumps({"meta": meta, "rows": rows}, indent=2, sort_keys=True) + "\n"


def render(fmt: str, command: str, meta: Dict, rows: List[Dict]) -> str:
    if fmt == "json":
        return render_json(meta, rows)
    return render_csv(command, rows)
