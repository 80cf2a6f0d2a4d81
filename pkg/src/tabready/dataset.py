"""Typed columnar dataset with role annotations and canonical missing handling.

CSV cells are trimmed, matched against a configurable missing-token set, and
typed per column: Numeric (every present cell is a finite real), Boolean
(cells drawn from true/false/0/1 with at most two distinct spellings), else
Categorical. Text is never auto-inferred; it exists only as an explicit
override. Datasets are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable, Optional

from .errors import DuplicateHeader, EmptyInput, MalformedCsv, UnknownColumn

logger = logging.getLogger(__name__)

# A cell is absent (None) or a parsed value of the column's kind.
Cell = Optional[object]

DEFAULT_MISSING_TOKENS = frozenset({"", "na", "nan", "null"})

# Strict numeric literal: float() alone is too permissive ("1_0", "inf").
_NUMERIC_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")

_BOOL_TOKENS = {"true": True, "false": False, "0": False, "1": True}

FAIR_ITEM_IDS = (
    "F1", "F2", "F3",
    "A1", "A2", "A3",
    "I1", "I2", "I3",
    "R1", "R2", "R3",
)


class ColumnKind(str, Enum):
    NUMERIC = "Numeric"
    CATEGORICAL = "Categorical"
    BOOLEAN = "Boolean"
    TEXT = "Text"


def parse_numeric(text: str) -> float | None:
    """Parse a strict finite real, or None if the text is not one."""
    if not _NUMERIC_RE.fullmatch(text):
        return None
    value = float(text)
    return value if math.isfinite(value) else None


def infer_kind(cells: Iterable[str | None]) -> ColumnKind:
    """Infer a column kind from present (already missing-filtered) cell texts.

    Numeric wins when every present cell parses as a finite real; Boolean when
    cells are spelled from {true, false, 0, 1} (case-insensitive) with at most
    two distinct spellings; everything else, including an all-missing column,
    is Categorical. Order of cells never matters.
    """
    present = [c for c in cells if c is not None]
    if not present:
        return ColumnKind.CATEGORICAL
    if all(parse_numeric(c) is not None for c in present):
        return ColumnKind.NUMERIC
    lowered = {c.lower() for c in present}
    if lowered <= _BOOL_TOKENS.keys() and len(lowered) <= 2:
        return ColumnKind.BOOLEAN
    return ColumnKind.CATEGORICAL


@dataclass(frozen=True)
class Column:
    """One named column: a kind plus an ordered sequence of optional cells.

    Present values are floats for Numeric, bools for Boolean, and strings
    for Categorical/Text. ``missing_count`` always equals the number of
    absent cells.
    """

    name: str
    kind: ColumnKind
    values: tuple[Cell, ...]
    missing_count: int

    def __post_init__(self) -> None:
        actual = sum(1 for v in self.values if v is None)
        if actual != self.missing_count:
            raise ValueError(
                f"column {self.name!r}: missing_count {self.missing_count} != actual {actual}"
            )
        if self.kind is ColumnKind.NUMERIC:
            for v in self.values:
                if v is not None and not (isinstance(v, float) and math.isfinite(v)):
                    raise ValueError(f"column {self.name!r}: non-finite numeric cell {v!r}")

    @classmethod
    def build(cls, name: str, kind: ColumnKind, values: Iterable[Cell]) -> "Column":
        vals = tuple(values)
        return cls(name, kind, vals, sum(1 for v in vals if v is None))

    def present(self) -> list[Any]:
        """Present values in row order."""
        return [v for v in self.values if v is not None]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RoleMap:
    """Column roles: prediction target, sensitive features, quasi-identifiers."""

    target: str | None = None
    positive_label: str | None = None
    sensitive: frozenset[str] = frozenset()
    quasi_identifiers: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sensitive", frozenset(self.sensitive))
        object.__setattr__(self, "quasi_identifiers", frozenset(self.quasi_identifiers))
        if self.target is not None and self.target in self.quasi_identifiers:
            raise ValueError(f"target {self.target!r} cannot also be a quasi-identifier")

    def referenced_columns(self) -> set[str]:
        cols = set(self.sensitive) | set(self.quasi_identifiers)
        if self.target is not None:
            cols.add(self.target)
        return cols

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "positive_label": self.positive_label,
            "sensitive": sorted(self.sensitive),
            "quasi_identifiers": sorted(self.quasi_identifiers),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RoleMap":
        return cls(
            target=data.get("target"),
            positive_label=data.get("positive_label"),
            sensitive=frozenset(data.get("sensitive") or ()),
            quasi_identifiers=frozenset(data.get("quasi_identifiers") or ()),
        )


@dataclass(frozen=True)
class MetadataDescriptor:
    """Dataset-level metadata: a FAIR checklist plus free-form provenance fields."""

    checklist: dict[str, bool] = field(default_factory=dict)
    title: str | None = None
    identifier: str | None = None
    license: str | None = None
    provenance: str | None = None
    access_protocol: str | None = None

    def __post_init__(self) -> None:
        unknown = set(self.checklist) - set(FAIR_ITEM_IDS)
        if unknown:
            raise ValueError(f"unknown checklist item ids: {sorted(unknown)}")

    @classmethod
    def from_json(cls, text: str | bytes) -> "MetadataDescriptor":
        """Load from the descriptor JSON document; unknown keys warn and are dropped."""
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("descriptor document must be a JSON object")
        known = {"checklist", "title", "identifier", "license", "provenance", "access_protocol"}
        for key in sorted(set(data) - known):
            logger.warning("descriptor: ignoring unknown key %r", key)
        checklist = data.get("checklist") or {}
        known_items = {k: bool(v) for k, v in checklist.items() if k in FAIR_ITEM_IDS}
        for key in sorted(set(checklist) - set(known_items)):
            logger.warning("descriptor: ignoring unknown checklist item %r", key)
        return cls(
            checklist=known_items,
            title=data.get("title"),
            identifier=data.get("identifier"),
            license=data.get("license"),
            provenance=data.get("provenance"),
            access_protocol=data.get("access_protocol"),
        )

    def to_dict(self) -> dict:
        return {
            "checklist": dict(sorted(self.checklist.items())),
            "title": self.title,
            "identifier": self.identifier,
            "license": self.license,
            "provenance": self.provenance,
            "access_protocol": self.access_protocol,
        }


@dataclass(frozen=True)
class Dataset:
    """Immutable table: equal-length columns, unique names, optional roles."""

    columns: tuple[Column, ...]
    row_count: int
    roles: RoleMap = RoleMap()
    source_id: str = ""
    descriptor: MetadataDescriptor | None = None

    def __post_init__(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate column names: {dupes}")
        for col in self.columns:
            if len(col) != self.row_count:
                raise ValueError(
                    f"column {col.name!r} has {len(col)} cells, expected {self.row_count}"
                )
        missing_roles = self.roles.referenced_columns() - set(names)
        if missing_roles:
            raise UnknownColumn(f"roles reference unknown columns: {sorted(missing_roles)}")

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        for col in self.columns:
            if col.name == name:
                return col
        raise UnknownColumn(f"no column named {name!r}")

    def numeric_columns(self) -> list[Column]:
        return [c for c in self.columns if c.kind is ColumnKind.NUMERIC]

    def rows(self) -> list[tuple[Cell, ...]]:
        """Row tuples in order; missing cells stay None."""
        return list(zip(*(c.values for c in self.columns))) if self.columns else []

    def with_roles(self, roles: RoleMap) -> "Dataset":
        return replace(self, roles=roles)

    def with_descriptor(self, descriptor: MetadataDescriptor | None) -> "Dataset":
        return replace(self, descriptor=descriptor)


@dataclass(frozen=True)
class ParseOptions:
    """CSV parsing knobs. Defaults match RFC-4180 with a header row."""

    delimiter: str = ","
    has_header: bool = True
    missing_tokens: frozenset[str] = DEFAULT_MISSING_TOKENS
    kind_overrides: dict[str, ColumnKind] = field(default_factory=dict)

    def is_missing(self, text: str) -> bool:
        return text.lower() in self.missing_tokens


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedCsv(f"input is not valid UTF-8: {exc}") from exc
    return data


def parse_csv(data: bytes | str, options: ParseOptions | None = None,
              source_id: str = "") -> Dataset:
    """Parse CSV bytes/text into a typed Dataset.

    Cells are whitespace-trimmed, then matched (case-insensitively) against
    the missing-token set. Column kinds are inferred unless overridden.
    Ragged rows and unbalanced quotes are rejected with row diagnostics.
    """
    options = options or ParseOptions()
    text = _decode(data)
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=options.delimiter)

    try:
        raw_rows = list(reader)
    except csv.Error as exc:
        raise MalformedCsv(f"CSV parse error: {exc}", row=reader.line_num) from exc

    # Trailing blank line(s) from a final newline are not data rows.
    while raw_rows and raw_rows[-1] == []:
        raw_rows.pop()
    if not raw_rows:
        raise EmptyInput("no header row found")

    if options.has_header:
        header = [h.strip() for h in raw_rows[0]]
        body = raw_rows[1:]
    else:
        width = len(raw_rows[0])
        header = [f"col_{i}" for i in range(width)]
        body = raw_rows

    seen: set[str] = set()
    for name in header:
        if name in seen:
            raise DuplicateHeader(f"duplicate header cell {name!r}")
        seen.add(name)

    width = len(header)
    cells: list[list[str | None]] = [[] for _ in header]
    for i, row in enumerate(body):
        if len(row) != width:
            raise MalformedCsv(
                f"ragged row: expected {width} cells, got {len(row)}",
                row=i + (2 if options.has_header else 1),
                column=len(row),
            )
        for j, raw in enumerate(row):
            trimmed = raw.strip()
            cells[j].append(None if options.is_missing(trimmed) else trimmed)

    columns = []
    for name, texts in zip(header, cells):
        kind = options.kind_overrides.get(name) or infer_kind(texts)
        columns.append(Column.build(name, kind, (_convert(t, kind) for t in texts)))

    return Dataset(columns=tuple(columns), row_count=len(body), source_id=source_id)


def _convert(text: str | None, kind: ColumnKind) -> Cell:
    if text is None:
        return None
    if kind is ColumnKind.NUMERIC:
        value = parse_numeric(text)
        if value is None:
            raise MalformedCsv(f"cell {text!r} is not numeric")
        return value
    if kind is ColumnKind.BOOLEAN:
        try:
            return _BOOL_TOKENS[text.lower()]
        except KeyError:
            raise MalformedCsv(f"cell {text!r} is not boolean") from None
    return text


def format_cell(value: Cell) -> str:
    """Render a cell back to CSV text; floats use shortest round-trip form."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(dataset: Dataset, options: ParseOptions | None = None) -> bytes:
    """Serialize a Dataset back to CSV; re-parsing with the same options
    yields cell-identical columns."""
    options = options or ParseOptions()
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=options.delimiter, lineterminator="\n")
    if options.has_header:
        writer.writerow([c.name for c in dataset.columns])
    for row in dataset.rows():
        texts = [format_cell(v) for v in row]
        if len(texts) == 1 and texts[0] == "":
            buf.write('""\n')  # a bare blank line would read back as no row
        else:
            writer.writerow(texts)
    return buf.getvalue().encode("utf-8")


def schema_fingerprint(dataset: Dataset) -> str:
    """Deterministic digest over ordered (name, kind) pairs and the role map.

    Any change to a column name, its position, its kind, or any role changes
    the fingerprint; federated clients must agree on it before merging.
    """
    payload = json.dumps(
        {
            "columns": [[c.name, c.kind.value] for c in dataset.columns],
            "roles": dataset.roles.to_dict(),
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
