"""Deterministic JSON/CSV emission.

Floats are printed with 12 significant digits (round-half-even via the
platform's ``%g``), so identical inputs yield byte-identical output and the
printed decimals reparse to the same 12-digit form.  Unbounded interval
sides become "inf" / "-inf" tokens: quoted strings in JSON, bare in CSV.
"""

from __future__ import annotations

import json
import math

SIGNIFICANT_DIGITS = 12


def fmt_float(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, f".{SIGNIFICANT_DIGITS}g")


def json_dumps(value) -> str:
    """Serialize nested dicts/lists/scalars with fixed float formatting."""
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            raise ValueError("cannot serialize NaN")
        if math.isinf(value):
            return f'"{fmt_float(value)}"'
        return fmt_float(value)
    if isinstance(value, dict):
        items = ",".join(f"{json.dumps(str(k))}:{json_dumps(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(json_dumps(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def csv_line(values) -> str:
    return ",".join(csv_cell(v) for v in values)
