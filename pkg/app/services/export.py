import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.config import OUTPUT_DIGITS
from app.middleware.error import InputOutputError
from app.schemas import OutputDocument

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """Table cell text; floats keep OUTPUT_DIGITS significant digits"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{OUTPUT_DIGITS}g")
    return str(value)


def _meta_value(value: Any) -> str:
    if isinstance(value, float):
        return format_value(value)
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)


# Render rows as CSV with a '#'-prefixed metadata header
def render_csv(meta: Dict[str, Any], columns: Sequence[str], rows: List[Dict[str, Any]]) -> str:
    output = io.StringIO()
    for key in sorted(meta):
        output.write(f"# {key}: {_meta_value(meta[key])}\n")

    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])
    return output.getvalue()


def render_json(meta: Dict[str, Any], rows: List[Dict[str, Any]]) -> str:
    document = OutputDocument(meta=meta, rows=rows)
    return document.model_dump_json(indent=2) + "\n"


def render(meta: Dict[str, Any], columns: Sequence[str], rows: List[Dict[str, Any]], fmt: str) -> str:
    if fmt == "json":
        return render_json(meta, rows)
    return render_csv(meta, columns, rows)


def write_output(text: str, out: Optional[str], stream=None) -> None:
    """Write to the given path, or to the stream (stdout) when no path is set"""
    if out is None:
        (stream or sys.stdout).write(text)
        return
    try:
        path = Path(out)
        path.write_text(text)
    except OSError as exc:
        raise InputOutputError(f"cannot write output to {out}: {exc}")
    logger.info(f"Wrote {len(text)} bytes to {out}")


def read_csv_output(path: str) -> Tuple[Dict[str, str], List[Dict[str, str]]]:
    """Parse a CSV written by render_csv back into (meta, rows) of strings"""
    meta: Dict[str, str] = {}
    body = []
    try:
        with open(path, newline="") as handle:
            for line in handle:
                if line.startswith("# "):
                    key, _, value = line[2:].rstrip("\n").partition(": ")
                    meta[key] = value
                else:
                    body.append(line)
    except OSError as exc:
        raise InputOutputError(f"cannot read {path}: {exc}")
    return meta, list(csv.DictReader(body))
