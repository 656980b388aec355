"""Report rows and deterministic CSV / JSON / table output."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import IO, Mapping, Sequence, Union

from .errors import DomainError

FORMATS = ("csv", "json", "table")


@dataclass(frozen=True)
class CheckRow:
    """One numeric check: computed value against a reference at a tolerance."""

    name: str
    value: float
    reference: float
    tolerance: float
    passed: bool
    anchor: str = ""

    def as_dict(self):
        return asdict(self)


def check(name: str, value: float, reference: float, tolerance: float, anchor: str = "",
          relative: bool = False) -> CheckRow:
    """Build a row that passes when |value - reference| <= tolerance (optionally relative)."""
    scale = abs(reference) if relative and reference != 0 else 1.0
    ok = math.isfinite(value) and abs(value - reference) <= tolerance * scale
    return CheckRow(name, float(value), float(reference), float(tolerance), bool(ok), anchor)


def bound(name: str, value: float, limit: float, anchor: str = "") -> CheckRow:
    """Row that passes when value < limit; the reference column holds 0."""
    ok = math.isfinite(value) and value < limit
    return CheckRow(name, float(value), 0.0, float(limit), bool(ok), anchor)


def format_cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return str(x)


def _json_cell(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float) and not math.isfinite(x):
        return format_cell(x)
    if hasattr(x, "item"):
        return x.item()
    return x


def _table(columns, rows) -> str:
    cells = [[format_cell(c) for c in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(columns)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells)
    return "\n".join(lines) + "\n"


def render(columns: Sequence[str], rows: Sequence[Sequence], fmt: str = "csv") -> str:
    """Render a header and rows as CSV (RFC 4180, CRLF), JSON or an aligned table."""
    if fmt not in FORMATS:
        raise DomainError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        writer.writerows([format_cell(c) for c in row] for row in rows)
        return buf.getvalue()
    if fmt == "json":
        payload = {"columns": list(columns), "rows": [[_json_cell(c) for c in row] for row in rows]}
        return json.dumps(payload, indent=2) + "\n"
    return _table(columns, rows)


def _write(text: str, path: Union[str, Path, IO, None]):
    if path is None or path == "-":
        return text
    if hasattr(path, "write"):
        path.write(text)
        return text
    try:
        # newline="" keeps the CSV line terminators intact
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text


def emit_profile(columns: Mapping[str, Sequence], path=None, fmt: str = "csv") -> str:
    """Write equal-length named columns as one row per sample; returns the text."""
    if not columns:
        raise DomainError("no columns to emit")
    names = list(columns)
    data = [list(columns[k]) for k in names]
    length = len(data[0])
    if any(len(col) != length for col in data):
        raise DomainError("columns must have equal length")
    rows = [[_scalar(col[i]) for col in data] for i in range(length)]
    return _write(render(names, rows, fmt), path)


def _scalar(x):
    return x.item() if hasattr(x, "item") else x


CHECK_COLUMNS = ("check", "value", "reference", "tolerance", "status", "anchor")


def emit_checks(rows: Sequence[CheckRow], path=None, fmt: str = "csv") -> str:
    table = [[r.name, r.value, r.reference, r.tolerance, "pass" if r.passed else "FAIL", r.anchor]
             for r in rows]
    return _write(render(CHECK_COLUMNS, table, fmt), path)
