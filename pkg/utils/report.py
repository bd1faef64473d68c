"""
Report emission: JSON, flattened CSV and markdown tables.

All three formats are byte-stable for fixed inputs: JSON keys are sorted, and table columns
follow first appearance across the rows.
"""
import json
from typing import Any, Dict, List, Sequence, Union

import pandas as pd

from utils.errors import ReportIoError, ValidationError
from utils.obstructions import CLASSIFICATIONS

FORMATS = ("json", "csv", "md")

VERDICT_SCHEMA = {
    "pair": str,
    "dims": dict,
    "rank": dict,
    "sign": dict,
    "complexification": dict,
    "homotopy": dict,
    "bidegree": dict,
    "montecarlo": (dict, type(None)),
    "classification": str,
    "foliation_obstructed": bool,
    "reasons": list,
    "metadata": dict,
}
RANK_KEYS = ("rkG", "rkK", "rkH", "rkL")
DIM_KEYS = ("g", "h", "k", "l", "V", "p", "q")


def validate_verdict_dict(verdict: Dict) -> None:
    """Raise ValidationError listing every way the dict departs from the verdict schema"""
    problems = []
    for key, kind in VERDICT_SCHEMA.items():
        if key not in verdict:
            problems.append(f"missing {key}")
        elif not isinstance(verdict[key], kind):
            problems.append(f"{key} has type {type(verdict[key]).__name__}")
    if not problems:
        if verdict["classification"] not in CLASSIFICATIONS:
            problems.append(f"unknown classification {verdict['classification']!r}")
        for key in RANK_KEYS:
            if not isinstance(verdict["rank"].get(key), int):
                problems.append(f"rank.{key} must be an integer")
        for key in DIM_KEYS:
            if not isinstance(verdict["dims"].get(key), int):
                problems.append(f"dims.{key} must be an integer")
        if not isinstance(verdict["sign"].get("found"), bool):
            problems.append("sign.found must be a boolean")
        for n, reason in enumerate(verdict["reasons"]):
            if not isinstance(reason, dict) or not {"kind", "conclusion", "detail"} <= set(reason):
                problems.append(f"reasons[{n}] needs kind, conclusion and detail")
        if "version" not in verdict["metadata"] or "embedding" not in verdict["metadata"]:
            problems.append("metadata needs embedding and version")
        if verdict["foliation_obstructed"] != (verdict["classification"] == "NoCompactForms"):
            problems.append("foliation_obstructed disagrees with the classification")
    if problems:
        raise ValidationError("invalid verdict: " + "; ".join(problems))


def flatten_verdict(record: Dict, prefix: str = "") -> Dict[str, Any]:
    """Nested dicts become dotted columns; lists are JSON encoded; None becomes an empty cell"""
    flat: Dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten_verdict(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = json.dumps(value, sort_keys=True)
        elif value is None:
            flat[name] = ""
        else:
            flat[name] = value
    return flat


def _table(results: Sequence[Dict]) -> pd.DataFrame:
    rows = [flatten_verdict(r) for r in results]
    columns: List[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    return pd.DataFrame(rows, columns=columns).fillna("")


def emit_report(results: Union[Dict, Sequence[Dict]], fmt: str = "json") -> bytes:
    """Serialize results; tables take one row per record"""
    if fmt not in FORMATS:
        raise ValidationError(f"unknown format {fmt!r}; use one of {', '.join(FORMATS)}")
    try:
        if fmt == "json":
            return (json.dumps(results, indent=2, sort_keys=True, allow_nan=False) + "\n").encode("utf-8")
        records = [results] if isinstance(results, dict) else list(results)
        table = _table(records)
        if fmt == "csv":
            return table.to_csv(index=False, lineterminator="\n").encode("utf-8")
        return (table.to_markdown(index=False) + "\n").encode("utf-8")
    except (TypeError, ValueError) as e:
        raise ReportIoError(f"cannot serialize report: {e}")


def write_report(data: bytes, path: str) -> None:
    try:
        with open(path, "wb") as f:
            f.write(data)
    except OSError as e:
        raise ReportIoError(f"cannot write {path}: {e}")
