"""Report tables with provenance, written as CSV or JSON.

Numbers are written with 12 significant digits. Missing values must carry a
reason code (:class:`NA`); a bare NaN in a table is an error.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["NA", "ReportTable", "format_number", "config_hash", "file_digest"]


@dataclass(frozen=True)
class NA:
    reason: str

    def __str__(self) -> str:
        return f"NA:{self.reason}"


def format_number(x: float) -> str:
    return format(float(x), ".12g")


def config_hash(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True, default=str).encode()).hexdigest()


def file_digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return h.hexdigest()


def _cell_text(v) -> str:
    if isinstance(v, NA):
        return str(v)
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_number(v)
    return str(v)


def _cell_json(v):
    if isinstance(v, NA):
        return str(v)
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(format_number(v))
    return str(v)


@dataclass
class ReportTable:
    name: str
    columns: tuple
    rows: list
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(
                    f"{self.name}: row {i} has {len(row)} cells, expected {len(self.columns)}"
                )
            for v in row:
                if isinstance(v, (float, np.floating)) and not math.isfinite(v):
                    raise ValueError(f"{self.name}: row {i} has a non-finite cell without NA reason")

    def provenance_block(self) -> dict:
        block = dict(self.provenance)
        block["row_count"] = len(self.rows)
        return block

    def to_csv(self) -> str:
        lines = [
            f"# provenance: {k}={json.dumps(v, sort_keys=True, default=str)}"
            for k, v in sorted(self.provenance_block().items())
        ]
        lines.append(",".join(self.columns))
        lines.extend(",".join(_cell_text(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "provenance": self.provenance_block(),
            "columns": list(self.columns),
            "rows": [[_cell_json(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, sort_keys=True, indent=1, default=str) + "\n"

    def write(self, directory, fmt: str = "csv") -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{self.name}.{fmt}"
        text = self.to_csv() if fmt == "csv" else self.to_json()
        path.write_text(text)
        return path

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]
