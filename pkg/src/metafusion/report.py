"""Sweep reports with a fixed TSV column order and a JSON form."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

from . import __version__


@dataclass
class SweepReport:
    check: str
    max_order: int
    columns: tuple[str, ...]
    rows: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    status_column: str = "verdict"
    version: str = __version__

    @property
    def failed(self) -> int:
        return sum(1 for row in self.rows if row.get(self.status_column) == "FAIL")

    @property
    def passed(self) -> int:
        return len(self.rows) - self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def add(self, **row):
        self.rows.append(row)

    def to_tsv(self) -> str:
        out = io.StringIO()
        out.write("\t".join(self.columns) + "\n")
        for row in self.rows:
            out.write("\t".join(_cell(row.get(c, "")) for c in self.columns) + "\n")
        return out.getvalue()

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "max_order": self.max_order,
            "version": self.version,
            "columns": list(self.columns),
            "rows": [{c: row.get(c) for c in self.columns} for row in self.rows],
            "summary": {"passed": self.passed, "failed": self.failed},
            "extra": self.extra,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)
