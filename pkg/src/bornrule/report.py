"""Report documents: lossless JSON for scripts, aligned text tables for people."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Report:
    command: str
    argv: list[str]
    input: dict[str, Any]
    tolerances: dict[str, float]
    result: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "argv": self.argv,
            "input": self.input,
            "tolerances": self.tolerances,
            "result": self.result,
        }


def format_float(x: float) -> str:
    """17 significant digits, enough for any double to survive a text round trip."""
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _plain(value):
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def dumps(value, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written by :func:`format_float`."""
    value = _plain(value)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        flat = [_plain(v) for v in value]
        if all(isinstance(v, (int, float, bool, str)) or v is None for v in flat):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in flat) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in flat]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_machine(report: Report) -> str:
    return dumps(report.as_dict()) + "\n"


def _cell(value) -> str:
    value = _plain(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def table(headers: list[str], rows: list[list]) -> str:
    cells = [[_cell(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for j, c in enumerate(row):
            widths[j] = max(widths[j], len(c))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(c.rjust(w) if _is_num(c) else c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def _is_num(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def matrix_table(labels: list[str], matrix) -> str:
    m = np.asarray(matrix, dtype=float)
    return table([""] + list(labels), [[labels[j]] + list(m[j]) for j in range(len(labels))])


def render_table(report: Report) -> str:
    """Human-readable rendering: scalars as key/value lines, then any tables."""
    out = [f"# {report.command}  ({report.input.get('path', '-')})"]
    res = report.result
    labels = res.get("labels")
    for key, value in res.items():
        value = _plain(value)
        if key == "labels":
            continue
        if key == "matrix" and labels:
            out.append("matrix:")
            out.append(matrix_table(labels, value))
        elif key == "properties":
            out.append(table(
                ["property", "status", "worst_deviation", "tolerance", "checks"],
                [[p["name"], "PASS" if p["passed"] else "FAIL", p["worst_deviation"],
                  p["tolerance"], p["checks"]] for p in value],
            ))
        elif isinstance(value, dict) and "counts" in value and labels:
            out.append(f"{key}:")
            out.append(table(
                ["outcome", "count", "frequency", "expected"],
                [[lab, c, f, e] for lab, c, f, e in
                 zip(labels, value["counts"], value["frequencies"], value["expected"])],
            ))
            out.append(f"  max_abs_deviation: {_cell(value['max_abs_deviation'])}")
        elif isinstance(value, (list, tuple)):
            out.append(f"{key}: " + ", ".join(_cell(v) for v in value))
        elif isinstance(value, dict):
            out.append(f"{key}:")
            out.extend(f"  {k}: {_cell(v)}" for k, v in value.items())
        else:
            out.append(f"{key}: {_cell(value)}")
    return "\n".join(out) + "\n"
