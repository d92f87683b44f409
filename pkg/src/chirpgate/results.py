"""Tabular sweep output shared by the command-line tools."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from chirpgate import __version__


@dataclass
class SweepResult:
    schema: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.schema = tuple(self.schema)
        self.metadata.setdefault("tool", "chirpgate")
        self.metadata.setdefault("version", __version__)

    def add(self, *row):
        if len(row) != len(self.schema):
            raise ValueError(f"row has {len(row)} entries, schema has {len(self.schema)}")
        for v in row:
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"non-finite entry in row {row!r}")
        self.rows.append(tuple(row))

    def column(self, name):
        i = self.schema.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.metadata.items():
            buf.write(f"# {k}: {json.dumps(v) if not isinstance(v, str) else v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.schema)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "schema": list(self.schema),
            "rows": [dict(zip(self.schema, r)) for r in self.rows],
        }
        return json.dumps(doc, indent=2)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _fmt(v):
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)  # shortest text that round-trips
    return str(v)


def read_csv(text: str) -> SweepResult:
    """Parse :meth:`SweepResult.to_csv` output back; numbers become int or float."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition(": ")
            meta[k] = v
        elif line:
            body.append(line)
    reader = csv.reader(body)
    schema = next(reader)
    res = SweepResult(schema, metadata=meta)
    for rec in reader:
        res.rows.append(tuple(_parse(v) for v in rec))
    return res


def _parse(v: str):
    try:
        return int(v)
    except ValueError:
        return float(v)
