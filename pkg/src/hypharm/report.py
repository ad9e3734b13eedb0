"""Experiment reports: versioned JSON records plus per-time-slice CSV.

The JSON schema is "hypharm-report/1".  Every report embeds the config hash
and tool version; the timestamp is the only field excluded from determinism
guarantees (CSV bodies are byte-identical for identical configs and seeds).
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .config import RunConfig
from .io import format_float

__all__ = ["ExperimentReport", "write_csv_columns"]

REPORT_SCHEMA = "hypharm-report/1"
TOOL_VERSION = "0.1.0"


@dataclass
class ExperimentReport:
    experiment: str
    statement: str
    grid_meta: dict
    family: str
    lhs: float | None
    rhs: float | None
    ratio: float | None
    stability: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    config_hash: str = ""
    passed: bool | None = None

    def to_json_dict(self, include_timestamp: bool = True) -> dict:
        d = {
            "schema": REPORT_SCHEMA,
            "tool_version": TOOL_VERSION,
            "experiment": self.experiment,
            "statement": self.statement,
            "grid_meta": self.grid_meta,
            "family": self.family,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "stability": self.stability,
            "warnings": list(self.warnings),
            "config_hash": self.config_hash,
            "passed": self.passed,
        }
        d.update(self.extra)
        if include_timestamp:
            d["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        return d

    def write(self, path: str | Path, include_timestamp: bool = True) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_json_dict(include_timestamp),
                                   indent=1, sort_keys=True))
        return path


def write_csv_columns(path: str | Path, header: list[str],
                      columns: list) -> Path:
    """RFC-4180 CSV with 17-significant-digit floats (deterministic bytes)."""
    path = Path(path)
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(header) + "\r\n")
        for i in range(rows):
            cells = []
            for c in columns:
                v = c[i]
                cells.append(format_float(v) if isinstance(v, float) else str(v))
            f.write(",".join(cells) + "\r\n")
    return path
