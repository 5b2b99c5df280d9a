"""Result tables and verification reports with pretty, CSV and JSON renderings."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

FORMATS = ("pretty", "csv", "json")


def _kind(v) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, Fraction):
        return "rational"
    return "str"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (tuple, list)):
        return ",".join(str(x) for x in v)
    return str(v)


def _json_cell(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return list(v)
    return v


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    title: str = ""
    summary: dict = field(default_factory=dict)

    def add(self, *row) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells for {len(self.columns)} columns")
        row = [tuple(v) if isinstance(v, list) else v for v in row]
        for j, v in enumerate(row):
            for other in self.rows:
                if other[j] is not None and v is not None and _kind(other[j]) != _kind(v):
                    raise TypeError(f"column {self.columns[j]!r} mixes {_kind(other[j])} and {_kind(v)}")
                break
        self.rows.append(row)

    def render(self, fmt: str = "pretty") -> str:
        if fmt == "json":
            doc = {"title": self.title, "columns": self.columns,
                   "rows": [[_json_cell(v) for v in r] for r in self.rows],
                   "summary": {k: _json_cell(v) for k, v in self.summary.items()}}
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_cell(v) for v in r])
            return buf.getvalue()
        if fmt != "pretty":
            raise ValueError(f"unknown format {fmt!r}")
        lines = []
        if self.title:
            lines.append(self.title)
        for k, v in self.summary.items():
            lines.append(f"{k}: {_cell(v)}")
        if self.columns:
            cells = [[_cell(v) for v in r] for r in self.rows]
            widths = [max([len(c)] + [len(r[j]) for r in cells]) for j, c in enumerate(self.columns)]
            lines.append("  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip())
            for r in cells:
                lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skip
    inputs: dict = field(default_factory=dict)
    expected: str = ""
    actual: str = ""
    note: str = ""


class VerificationReport:
    """Per-check outcomes of one suite; the wall time goes into the footer only."""

    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[Check] = []
        self.epsilon: int | None = None
        self.notes: dict[str, str] = {}
        self.tables: list[ResultTable] = []
        self._start = time.perf_counter()
        self.wall_time: float | None = None

    def add(self, name: str, ok: bool | None, inputs: dict | None = None, expected="", actual="",
            note: str = "") -> Check:
        status = "skip" if ok is None else ("pass" if ok else "fail")
        chk = Check(name, status, dict(inputs or {}), str(expected), str(actual), note)
        self.checks.append(chk)
        return chk

    def extend(self, other: "VerificationReport") -> None:
        for c in other.checks:
            c.name = f"{other.suite}/{c.name}"
            self.checks.append(c)
        if other.epsilon is not None:
            self.epsilon = other.epsilon
        for k, v in other.notes.items():
            self.notes[f"{other.suite}.{k}"] = v
        self.tables.extend(other.tables)

    def finish(self) -> "VerificationReport":
        self.wall_time = time.perf_counter() - self._start
        return self

    def count(self, status: str) -> int:
        return sum(1 for c in self.checks if c.status == status)

    @property
    def passed(self) -> bool:
        return self.count("fail") == 0

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def table(self) -> ResultTable:
        t = ResultTable(["check", "status", "inputs", "expected", "actual", "note"], title=f"suite {self.suite}")
        for c in self.checks:
            t.add(c.name, c.status, json.dumps(c.inputs, sort_keys=True), c.expected, c.actual, c.note)
        t.summary["pass"] = self.count("pass")
        t.summary["fail"] = self.count("fail")
        t.summary["skip"] = self.count("skip")
        if self.epsilon is not None:
            t.summary["epsilon"] = self.epsilon
        for k, v in sorted(self.notes.items()):
            t.summary[k] = v
        return t

    def render(self, fmt: str = "pretty", footer: bool = True) -> str:
        body = self.table().render(fmt)
        if not footer or self.wall_time is None:
            return body
        if fmt == "json":
            doc = json.loads(body)
            doc["wall_time_s"] = round(self.wall_time, 3)
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        return body + f"# wall time {self.wall_time:.2f} s\n"
