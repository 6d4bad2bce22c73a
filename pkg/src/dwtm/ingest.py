"""CSV ingestion: parse a tabular file into a typed, immutable column store.

The flow is parse_csv -> infer_schema -> materialize.  Parsing keeps every
cell as text; inference decides per-column kind (numeric vs categorical) and
the character budget each feature needs when rendered; materialization turns
cells into floats / tokens, maps class labels to indices, and applies the
missing-value policy.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import IO, Mapping, Optional, Union

import numpy as np

from .errors import MaterializeError, ParseError, SchemaError

logger = logging.getLogger(__name__)

#: A cell with this exact content is treated as missing.
MISSING = ""


class Kind(str, Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


def numeric_text(value: float) -> str:
    """Shortest exact decimal rendering of a finite float.

    Integer-valued floats lose the trailing ``.0``; everything else uses the
    shortest positional decimal that round-trips to the same float.  No
    scientific notation, ever, so the width of the text is the width drawn
    on the canvas.
    """
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} cannot be rendered")
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return np.format_float_positional(value, unique=True, trim="-")


@dataclass(frozen=True)
class FeatureSpec:
    """One column's identity, kind, and maximum rendered character count."""

    name: str
    kind: Kind
    max_chars: int

    def __post_init__(self):
        if self.max_chars < 1:
            raise ValueError(f"feature {self.name!r}: max_chars must be >= 1")


@dataclass(frozen=True)
class Schema:
    features: tuple[FeatureSpec, ...]
    target: str
    class_labels: tuple[str, ...]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate feature names in schema")
        if self.target in names:
            raise SchemaError(f"target {self.target!r} also listed as a feature")
        if not self.class_labels:
            raise SchemaError("schema has no class labels")
        if len(set(self.class_labels)) != len(self.class_labels):
            raise SchemaError("duplicate class labels")

    def feature(self, name: str) -> FeatureSpec:
        for f in self.features:
            if f.name == name:
                return f
        raise KeyError(name)


@dataclass(frozen=True)
class Dataset:
    """Immutable column store over one CSV file after materialization."""

    schema: Schema
    columns: Mapping[str, tuple]
    labels: tuple[int, ...]
    row_count: int

    def __post_init__(self):
        for f in self.schema.features:
            if len(self.columns[f.name]) != self.row_count:
                raise ValueError(f"column {f.name!r} length != row_count")
        if len(self.labels) != self.row_count:
            raise ValueError("label list length != row_count")

    def numeric(self, name: str) -> np.ndarray:
        return np.asarray(self.columns[name], dtype=float)


@dataclass
class RawTable:
    """Rows of text cells plus column names (synthesized when headerless)."""

    columns: list[str]
    rows: list[list[str]]
    had_header: bool = True

    def column(self, name: str) -> list[str]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def parse_csv(
    source: Union[bytes, str, IO],
    delimiter: str = ",",
    header: bool = True,
) -> RawTable:
    """Parse CSV text (RFC 4180 quoting) into a rectangular RawTable.

    Raises ParseError on empty input or on a record whose arity differs
    from the first record; the error names the offending 1-based record.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    records = [row for row in csv.reader(io.StringIO(text), delimiter=delimiter)]
    records = [row for row in records if row != []]  # csv yields [] for blank trailing lines
    if not records:
        raise ParseError("empty input: no CSV records found")

    arity = len(records[0])
    for i, row in enumerate(records):
        if len(row) != arity:
            raise ParseError(
                f"ragged CSV: record {i + 1} has {len(row)} cells, expected {arity}"
            )

    if header:
        columns, rows = records[0], records[1:]
    else:
        columns = [f"col{i}" for i in range(arity)]
        rows = records
    return RawTable(columns=columns, rows=rows, had_header=header)


def apply_label_collapse(table: RawTable, target: str, mapping: Mapping[str, str]) -> RawTable:
    """Rewrite target-column values through an explicit collapse map.

    Values absent from the map pass through unchanged.  This is the
    Cleveland-style "grades 1-4 all mean positive" transform, kept out of
    schema inference so it stays an opt-in config step.
    """
    if target not in table.columns:
        raise SchemaError(f"target column {target!r} not found")
    idx = table.columns.index(target)
    rows = [
        row[:idx] + [mapping.get(row[idx], row[idx])] + row[idx + 1 :]
        for row in table.rows
    ]
    return RawTable(columns=list(table.columns), rows=rows, had_header=table.had_header)


def _parses_numeric(cell: str) -> bool:
    try:
        return math.isfinite(float(cell))
    except ValueError:
        return False


def infer_schema(
    table: RawTable,
    target_name: str,
    overrides: Optional[Mapping[str, Union[Kind, str]]] = None,
) -> Schema:
    """Decide each column's kind and character budget; collect class labels.

    A column is numeric iff every non-missing cell parses as a finite
    number; overrides win.  max_chars is the widest rendering the column
    needs: shortest-exact-decimal width for numeric cells, token length for
    categorical ones.  Class labels keep file order of first appearance.
    """
    if target_name not in table.columns:
        raise SchemaError(f"target column {target_name!r} not found in {table.columns}")
    overrides = {k: Kind(v) for k, v in (overrides or {}).items()}
    for name in overrides:
        if name not in table.columns:
            raise SchemaError(f"kind override for unknown column {name!r}")

    features = []
    for name in table.columns:
        if name == target_name:
            continue
        cells = [c for c in table.column(name) if c != MISSING]
        if not cells:
            raise SchemaError(f"column {name!r} has no non-missing values")
        kind = overrides.get(name)
        if kind is None:
            kind = Kind.NUMERIC if all(_parses_numeric(c) for c in cells) else Kind.CATEGORICAL
        if kind is Kind.NUMERIC:
            width = max(len(numeric_text(float(c))) for c in cells)
        else:
            width = max(len(c) for c in cells)
        features.append(FeatureSpec(name=name, kind=kind, max_chars=width))

    seen: dict[str, None] = {}
    for cell in table.column(target_name):
        if cell != MISSING and cell not in seen:
            seen[cell] = None
    if not seen:
        raise SchemaError(f"target column {target_name!r} has no non-missing values")

    return Schema(features=tuple(features), target=target_name, class_labels=tuple(seen))


def materialize(table: RawTable, schema: Schema, missing: str = "drop") -> Dataset:
    """Turn a raw table into a typed Dataset under the given schema.

    Rows with any missing cell are dropped (missing="drop") or rejected
    (missing="error").  A cell that cannot be parsed under its declared
    numeric kind counts as missing under "drop" and is an error otherwise.
    max_chars is re-derived over the surviving rows so the schema carried by
    the Dataset matches what will actually be drawn.
    """
    if missing not in ("drop", "error"):
        raise ValueError(f"unknown missing policy {missing!r}")
    for f in schema.features:
        if f.name not in table.columns:
            raise SchemaError(f"schema feature {f.name!r} not in table")
    if schema.target not in table.columns:
        raise SchemaError(f"schema target {schema.target!r} not in table")

    col_idx = {name: table.columns.index(name) for name in
               [f.name for f in schema.features] + [schema.target]}
    label_index = {label: i for i, label in enumerate(schema.class_labels)}

    columns: dict[str, list] = {f.name: [] for f in schema.features}
    labels: list[int] = []
    for row_no, row in enumerate(table.rows):
        parsed: dict[str, object] = {}
        bad: Optional[str] = None
        for f in schema.features:
            cell = row[col_idx[f.name]]
            if cell == MISSING:
                bad = f"missing value in column {f.name!r}"
                break
            if f.kind is Kind.NUMERIC:
                try:
                    value = float(cell)
                    if not math.isfinite(value):
                        raise ValueError
                except ValueError:
                    bad = f"cell {cell!r} in column {f.name!r} is not a finite number"
                    break
                parsed[f.name] = value
            else:
                parsed[f.name] = cell
        target_cell = row[col_idx[schema.target]]
        if bad is None and target_cell == MISSING:
            bad = "missing class label"
        if bad is None and target_cell not in label_index:
            bad = f"class label {target_cell!r} not in schema"

        if bad is not None:
            if missing == "error":
                raise MaterializeError(f"row {row_no + 1}: {bad}")
            logger.debug("dropping row %d: %s", row_no + 1, bad)
            continue
        for f in schema.features:
            columns[f.name].append(parsed[f.name])
        labels.append(label_index[target_cell])

    final_features = []
    for f in schema.features:
        values = columns[f.name]
        if values:
            if f.kind is Kind.NUMERIC:
                width = max(len(numeric_text(v)) for v in values)
            else:
                width = max(len(v) for v in values)
        else:
            width = f.max_chars
        final_features.append(FeatureSpec(name=f.name, kind=f.kind, max_chars=width))

    final_schema = Schema(
        features=tuple(final_features),
        target=schema.target,
        class_labels=schema.class_labels,
    )
    return Dataset(
        schema=final_schema,
        columns={name: tuple(vals) for name, vals in columns.items()},
        labels=tuple(labels),
        row_count=len(labels),
    )


def serialize_csv(dataset: Dataset) -> str:
    """Write a Dataset back to CSV text; inverse of parse+materialize."""
    buf = io.StringIO()
    # default \r\n terminator so fields containing a bare \r still get quoted
    writer = csv.writer(buf)
    schema = dataset.schema
    writer.writerow([f.name for f in schema.features] + [schema.target])
    for i in range(dataset.row_count):
        cells = []
        for f in schema.features:
            v = dataset.columns[f.name][i]
            cells.append(numeric_text(v) if f.kind is Kind.NUMERIC else v)
        cells.append(schema.class_labels[dataset.labels[i]])
        writer.writerow(cells)
    return buf.getvalue()


def load_dataset(
    source: Union[bytes, str, IO],
    target: str,
    kinds: Optional[Mapping[str, str]] = None,
    missing: str = "drop",
    collapse_labels: Optional[Mapping[str, str]] = None,
    delimiter: str = ",",
    header: bool = True,
) -> Dataset:
    """Convenience wrapper: parse, optionally collapse labels, infer, materialize."""
    table = parse_csv(source, delimiter=delimiter, header=header)
    if collapse_labels:
        table = apply_label_collapse(table, target, collapse_labels)
    schema = infer_schema(table, target, overrides=kinds)
    return materialize(table, schema, missing=missing)
