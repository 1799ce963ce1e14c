"""CSV ingestion, attribute-kind inference, name tokenization, discretization.

CSV contract: RFC-4180 quoting, mandatory header row, UTF-8. Empty cells and
"NA"/"NULL" (any case) are nulls. A column is numeric when at least 95% of
its non-null cells parse as finite reals; stray unparseable cells in a
numeric column are coerced to null.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .model import (
    Attribute,
    Cell,
    Dataset,
    DuplicateHeaderError,
    EmptyAttributeError,
    Kind,
    MalformedCsvError,
)

NUMERIC_RATIO_THRESHOLD = 0.95
NULL_TOKENS = frozenset({"", "na", "null"})

_SPLIT_RE = re.compile(r"[^0-9A-Za-z]+")
_CAMEL_RE = re.compile(r"(?<=[a-z])(?=[A-Z])")


def tokenize(name: str) -> list[str]:
    """Split an attribute name into lowercase tokens.

    Splits on every non-alphanumeric run and on lower-to-upper camelCase
    boundaries; all-caps runs stay intact. Empty tokens are dropped and
    order is preserved.
    """
    tokens: list[str] = []
    for piece in _SPLIT_RE.split(name):
        for sub in _CAMEL_RE.split(piece):
            if sub:
                tokens.append(sub.lower())
    return tokens


@dataclass(frozen=True)
class TypeInferenceReport:
    attribute: str
    kind: Kind
    numeric_ratio: float


def _parse_number(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def infer_kind(name: str, raw_cells: Sequence[str | None]) -> TypeInferenceReport:
    """Classify a column from its raw string cells (nulls already None)."""
    non_null = [c for c in raw_cells if c is not None]
    if not non_null:
        return TypeInferenceReport(name, Kind.CATEGORICAL, 0.0)
    parseable = sum(1 for c in non_null if _parse_number(c) is not None)
    ratio = parseable / len(non_null)
    kind = Kind.NUMERIC if ratio >= NUMERIC_RATIO_THRESHOLD else Kind.CATEGORICAL
    return TypeInferenceReport(name, kind, ratio)


def _build_attribute(name: str, raw_cells: list[str | None]) -> Attribute:
    report = infer_kind(name, raw_cells)
    values: list[Cell] = []
    if report.kind is Kind.NUMERIC:
        for c in raw_cells:
            values.append(None if c is None else _parse_number(c))
    else:
        for c in raw_cells:
            values.append(None if c is None else c.lower())
    return Attribute(
        name=name,
        kind=report.kind,
        values=tuple(values),
        tokens=tuple(tokenize(name)),
    )


def _normalize_cell(cell: str) -> str | None:
    stripped = cell.strip()
    return None if stripped.lower() in NULL_TOKENS else stripped


def parse_dataset(text: str, name: str) -> Dataset:
    """Parse CSV text (header row mandatory) into a Dataset."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedCsvError(f"dataset {name!r}: no header row") from None

    folded = [h.casefold() for h in header]
    for i, h in enumerate(folded):
        if h in folded[:i]:
            raise DuplicateHeaderError(
                f"dataset {name!r}: duplicate header {header[i]!r} "
                f"(case-folded collision)"
            )

    columns: list[list[str | None]] = [[] for _ in header]
    row_count = 0
    for row_idx, row in enumerate(reader, start=2):
        if not row:  # csv.reader yields [] for blank lines; skip them
            continue
        if len(row) != len(header):
            raise MalformedCsvError(
                f"dataset {name!r}: row {row_idx} has {len(row)} cells, "
                f"expected {len(header)}"
            )
        for col, cell in zip(columns, row):
            col.append(_normalize_cell(cell))
        row_count += 1

    attributes = tuple(
        _build_attribute(h, col) for h, col in zip(header, columns)
    )
    return Dataset(name=name, attributes=attributes, row_count=row_count)


def load_dataset(path: str | Path, name: str | None = None) -> Dataset:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_dataset(text, name if name is not None else path.stem)


def dataset_to_csv(dataset: Dataset) -> str:
    """Serialize back to CSV (nulls become empty cells)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(dataset.attribute_names)
    for i in range(dataset.row_count):
        writer.writerow(
            [
                "" if a.values[i] is None else
                repr(a.values[i]) if isinstance(a.values[i], float) else
                a.values[i]
                for a in dataset.attributes
            ]
        )
    return buf.getvalue()


def write_dataset(dataset: Dataset, path: str | Path) -> None:
    Path(path).write_text(dataset_to_csv(dataset), encoding="utf-8")


def from_columns(name: str, columns: dict[str, Sequence[object]]) -> Dataset:
    """Build a Dataset from in-memory columns, inferring kinds.

    Numbers become numeric cells, everything else a lowercase string; None
    and NaN are nulls. Handy for synthetic corpora in tests and benchmarks.
    """
    lengths = {len(v) for v in columns.values()}
    if len(lengths) > 1:
        raise MalformedCsvError(f"dataset {name!r}: ragged columns {lengths}")
    row_count = lengths.pop() if lengths else 0

    attributes = []
    for col_name, cells in columns.items():
        raw: list[str | None] = []
        for v in cells:
            if v is None or (isinstance(v, float) and math.isnan(v)):
                raw.append(None)
            else:
                raw.append(repr(v) if isinstance(v, float) else str(v))
        attributes.append(_build_attribute(col_name, raw))
    return Dataset(name=name, attributes=tuple(attributes), row_count=row_count)


def discretize(attr: Attribute, bins: int) -> Attribute:
    """Equal-width binning of a numeric attribute into labels bin_0..bin_{k-1}.

    The max value lands in the last bin; a zero-width range collapses to
    bin_0; nulls stay null.
    """
    if attr.kind is not Kind.NUMERIC:
        raise ValueError(f"attribute {attr.name!r} is not numeric")
    if bins < 1:
        raise ValueError(f"bins must be >= 1 (got {bins})")
    non_null = [v for v in attr.values if v is not None]
    if not non_null:
        raise EmptyAttributeError(f"attribute {attr.name!r} has no values to bin")

    lo = min(non_null)
    hi = max(non_null)
    width = (hi - lo) / bins

    def label(v: float) -> str:
        if width == 0.0:
            return "bin_0"
        k = min(int((v - lo) / width), bins - 1)
        return f"bin_{k}"

    values = tuple(None if v is None else label(v) for v in attr.values)
    return Attribute(
        name=attr.name, kind=Kind.CATEGORICAL, values=values, tokens=attr.tokens
    )
