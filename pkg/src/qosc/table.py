"""Small column-oriented table with lossless CSV and JSON writers."""
from __future__ import annotations

import csv
import io
import json
import math

__all__ = ["Table", "format_value"]


def format_value(v):
    """17 significant digits for floats; plain str for the rest."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return "%.17g" % v
    return str(v)


def _parse_value(text):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if text in ("true", "false"):
        return text == "true"
    return text


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _same_row(a, b):
    if len(a) != len(b):
        return False
    for x, y in zip(a, b):
        if isinstance(x, float) and isinstance(y, float) and math.isnan(x) and math.isnan(y):
            continue
        if x != y:
            return False
    return True


class Table:
    """Rows of equal length under a fixed header."""

    def __init__(self, columns, rows=None):
        self.columns = list(columns)
        self.rows = []
        for row in rows or []:
            self.append(row)

    def append(self, row):
        row = list(row)
        if len(row) != len(self.columns):
            raise ValueError(
                f"row has {len(row)} fields, expected {len(self.columns)}")
        self.rows.append(row)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def records(self):
        return [dict(zip(self.columns, r)) for r in self.rows]

    def where(self, **conds):
        idx = {k: self.columns.index(k) for k in conds}
        keep = [r for r in self.rows
                if all(r[idx[k]] == v for k, v in conds.items())]
        return Table(self.columns, keep)

    def __eq__(self, other):
        # NaN cells compare equal so that round trips can be checked directly
        return (isinstance(other, Table) and self.columns == other.columns
                and len(self.rows) == len(other.rows)
                and all(_same_row(a, b) for a, b in zip(self.rows, other.rows)))

    # -- serialization ------------------------------------------------------
    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        return cls(header, [[_parse_value(x) for x in row] for row in reader])

    def to_json(self):
        rows = [[_json_value(v) for v in row] for row in self.rows]
        return json.dumps({"columns": self.columns, "rows": rows}, indent=1)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        rows = [[math.nan if v is None else v for v in row]
                for row in data["rows"]]
        return cls(data["columns"], rows)

    def dumps(self, fmt="csv"):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")
