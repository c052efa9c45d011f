"""Byte-stable report serialization.

Identical inputs serialize to identical bytes: key order follows insertion
order of the report dicts (which is fixed by the producing code), rationals
print as "num/den", and floats are rounded to 12 significant digits before
encoding.
"""

from __future__ import annotations

import json
from dataclasses import is_dataclass
from fractions import Fraction

from .scaling import ScalingSeries


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, int) or isinstance(obj, str):
        return obj
    if is_dataclass(obj) and hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    if hasattr(obj, "value") and obj.__class__.__name__ == "Mode":
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def _format_cell(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{_round12(v):.12g}"
    return str(v)


def emit_series_csv(series: ScalingSeries) -> str:
    lines = ["n,set_size,metric,value"]
    for row in series.rows:
        lines.append(f"{row.param},{row.set_size},{row.metric},{_format_cell(row.value)}")
    metrics = series.metrics()
    for metric in metrics:
        fit = series.fits.get(metric)
        if fit is None:
            continue
        prefix = "# " if len(metrics) == 1 else f"# metric={metric} "
        lines.append(
            prefix
            + f"slope={_format_cell(fit.slope)},stderr={_format_cell(fit.stderr)},r2={_format_cell(fit.r2)}"
        )
    return "\n".join(lines) + "\n"


def emit_flat_csv(obj) -> str:
    lines = ["key,value"]
    for key, val in _flatten_dict(obj):
        lines.append(f"{key},{val}")
    return "\n".join(lines) + "\n"


def _flatten_dict(obj, prefix=""):
    out = []
    if is_dataclass(obj) and hasattr(obj, "as_dict"):
        obj = obj.as_dict()
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.extend(_flatten_dict(v, f"{prefix}{k}."))
    elif isinstance(obj, (list, tuple)):
        out.append((prefix.rstrip("."), " ".join(_format_cell(v) for v in obj)))
    else:
        out.append((prefix.rstrip("."), _format_cell(obj)))
    return out


def emit_report(obj, fmt: str = "json") -> str:
    """One report, one byte stream; fmt is "json" or "csv"."""
    if fmt == "json":
        return emit_json(obj)
    if fmt == "csv":
        if isinstance(obj, ScalingSeries):
            return emit_series_csv(obj)
        return emit_flat_csv(obj)
    raise ValueError(f"unknown format {fmt!r}")
