"""
Trace and Report Export
=======================

CSV and JSON writers. Output is UTF-8 with LF line endings, and floats are
written with 9 significant digits so that equal traces give byte-identical
files.
"""

import csv
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, Union

EVENT_COLUMNS = ("time", "sequence", "kind", "capability", "node", "instance", "detail")
WINDOW_COLUMNS = (
    "window_index",
    "capability",
    "C",
    "R",
    "W",
    "NF",
    "nA",
    "nT",
    "nC",
    "tD",
    "energy_draw",
    "ir_max",
    "sinkholed",
    "forged_fraction",
)


def format_value(value: Any) -> str:
    """Stable text form of one cell"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def format_detail(detail: Iterable) -> str:
    return ";".join(f"{key}={format_value(value)}" for key, value in detail)


def _write_rows(path: Path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def export_trace(trace, out_dir: Union[str, Path]) -> Dict[str, Path]:
    """Write events.csv and windows.csv for a trace"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    events_path = out_dir / "events.csv"
    windows_path = out_dir / "windows.csv"

    _write_rows(
        events_path,
        EVENT_COLUMNS,
        (
            (
                e.time,
                e.sequence,
                e.kind,
                e.capability,
                e.node,
                e.instance,
                format_detail(e.detail),
            )
            for e in trace.events
        ),
    )
    _write_rows(
        windows_path,
        WINDOW_COLUMNS,
        ([getattr(w, column) for column in WINDOW_COLUMNS] for w in trace.windows),
    )
    return {"events": events_path, "windows": windows_path}


def write_json(data: Dict[str, Any], file_path: Union[str, Path]) -> Path:
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
        f.write("\n")
    return file_path


def read_json(file_path: Union[str, Path]) -> Dict[str, Any]:
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)
