"""Report documents emitted by the command-line tool, and their renderers."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    tol: float
    passed: bool
    relation: str = "=="

    def __post_init__(self):
        if not math.isfinite(self.tol):
            raise ValueError(f"check {self.name!r} needs a finite tolerance")
        self.passed = bool(self.passed)


@dataclass
class ReportDoc:
    command: str
    inputs: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if self.ok else "fail"
        return _clean(d)

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDoc":
        return cls(d["command"], dict(d.get("inputs", {})), list(d.get("results", [])),
                   [Check(**c) for c in d.get("checks", [])])


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def emit_json(doc: ReportDoc) -> str:
    return json.dumps(doc.to_dict(), indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> ReportDoc:
    return ReportDoc.from_dict(json.loads(text))


def fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format(value, ".12g")
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in value) + "]"
    return str(value)


def _columns(rows: list) -> list:
    cols = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    return cols


def emit_csv(doc: ReportDoc) -> str:
    buf = io.StringIO()
    rows = doc.results
    if doc.checks:
        rows = rows + [{"check": c.name, "expected": c.expected, "actual": c.actual,
                        "tol": c.tol, "relation": c.relation, "pass": c.passed}
                       for c in doc.checks]
    cols = _columns(rows)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([fmt(row.get(c)) if row.get(c) is not None else "" for c in cols])
    return buf.getvalue()


def emit_table(doc: ReportDoc) -> str:
    lines = [f"# {doc.command} " + " ".join(f"{k}={fmt(v)}" for k, v in doc.inputs.items())]
    if doc.results:
        cols = _columns(doc.results)
        cells = [[fmt(r.get(c)) for c in cols] for r in doc.results]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells)
    if doc.checks:
        lines.append("")
        for c in doc.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}: actual {fmt(c.actual)} {c.relation} "
                         f"expected {fmt(c.expected)} (tol {fmt(c.tol)})")
        lines.append(f"status: {'pass' if doc.ok else 'fail'} "
                     f"({len(doc.checks) - len(doc.failures)}/{len(doc.checks)} checks)")
    return "\n".join(lines) + "\n"
