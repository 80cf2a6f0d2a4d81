"""Data Quality pillar: completeness, duplicates, outliers, summary statistics.

All operations are pure functions over immutable datasets and measure only;
nothing here imputes, repairs, or drops data. Quantiles use linear
interpolation at position (n-1)*p on the sorted sample, so results are
bit-reproducible.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .dataset import Column, ColumnKind, Dataset
from .errors import EmptyDataset, MetricUndefined

TUKEY_MULTIPLIER = 1.5


def interpolated_quantile(sorted_values: list[float], p: float) -> float:
    """Quantile by linear interpolation at position (n-1)*p; input pre-sorted."""
    n = len(sorted_values)
    if n == 0:
        raise ValueError("quantile of empty sample")
    if n == 1:
        return sorted_values[0]
    pos = (n - 1) * p
    lo = int(math.floor(pos))
    frac = pos - lo
    if lo >= n - 1:
        return sorted_values[-1]
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo])


@dataclass(frozen=True)
class SummaryStats:
    """Per-column summary. Numeric columns fill the moment/quantile fields and
    an equal-width histogram; categorical-like columns fill mode, distinct_count
    and a capped category-count histogram instead."""

    mean: float | None = None
    median: float | None = None
    mode: object | None = None
    std_dev: float | None = None
    min: float | None = None
    max: float | None = None
    q1: float | None = None
    q3: float | None = None
    distinct_count: int = 0
    present_count: int = 0
    histogram: tuple[tuple[float, float, int], ...] = ()
    category_counts: tuple[tuple[str, int], ...] = ()


def completeness(dataset: Dataset) -> tuple[float, dict[str, float]]:
    """Overall and per-column fraction of present cells.

    An empty dataset (no rows or no columns) is defined as fully complete;
    callers should attach an `undefined` note in that case.
    """
    rows = dataset.row_count
    per_column: dict[str, float] = {}
    for col in dataset.columns:
        per_column[col.name] = 1.0 if rows == 0 else 1.0 - col.missing_count / rows
    total_cells = rows * len(dataset.columns)
    if total_cells == 0:
        return 1.0, per_column
    total_missing = sum(c.missing_count for c in dataset.columns)
    return 1.0 - total_missing / total_cells, per_column


def duplicate_fraction(dataset: Dataset) -> float:
    """(rows - distinct rows) / rows; cells compare with missing == missing."""
    if dataset.row_count < 1:
        raise EmptyDataset("duplicate_fraction needs at least one row")
    distinct = len(set(dataset.rows()))
    return (dataset.row_count - distinct) / dataset.row_count


def outlier_rate(col: Column, multiplier: float = TUKEY_MULTIPLIER) -> float:
    """Tukey-fence outlier rate for a numeric column.

    Fences sit at q1 - multiplier*IQR and q3 + multiplier*IQR; values strictly
    outside count as outliers. Needs at least 4 present values.

    Raises:
        MetricUndefined: column is not numeric or has fewer than 4 present values.
    """
    if col.kind is not ColumnKind.NUMERIC:
        raise MetricUndefined(f"column {col.name!r} is not numeric")
    values = sorted(col.present())
    if len(values) < 4:
        raise MetricUndefined(
            f"column {col.name!r} has {len(values)} present values; need >= 4"
        )
    q1 = interpolated_quantile(values, 0.25)
    q3 = interpolated_quantile(values, 0.75)
    iqr = q3 - q1
    lower = q1 - multiplier * iqr
    upper = q3 + multiplier * iqr
    outliers = sum(1 for v in values if v < lower or v > upper)
    return outliers / len(values)


def _mode(values: list, numeric: bool) -> object:
    counts = Counter(values)
    best = max(counts.values())
    candidates = [v for v, c in counts.items() if c == best]
    if numeric:
        return min(candidates)
    return min(candidates, key=lambda v: (str(v)))


def _numeric_histogram(values: list[float], bins: int) -> tuple[tuple[float, float, int], ...]:
    lo, hi = min(values), max(values)
    if lo == hi:
        return ((lo, hi, len(values)),)
    width = (hi - lo) / bins
    counts = [0] * bins
    for v in values:
        idx = min(int((v - lo) / width), bins - 1)
        counts[idx] = counts[idx] + 1
    return tuple((lo + i * width, lo + (i + 1) * width, c) for i, c in enumerate(counts))


def _category_histogram(values: list, cap: int) -> tuple[tuple[str, int], ...]:
    # Capped at `cap` labels plus an "(other)" bucket so the payload stays
    # bounded by the bin budget, never by the row count.
    counts = Counter(str(v).lower() if isinstance(v, bool) else str(v) for v in values)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    head = ranked[:cap]
    other = sum(c for _, c in ranked[cap:])
    if other:
        head.append(("(other)", other))
    return tuple(head)


def summary_stats(col: Column, bins: int = 10) -> SummaryStats:
    """Summary statistics over present values only.

    Mode ties break toward the smallest numeric value or the lexicographically
    first label. Numeric histograms use `bins` equal-width bins over
    [min, max] (one bin when min == max); categorical histograms keep the
    `bins` most frequent labels and fold the rest into "(other)".
    """
    present = col.present()
    n = len(present)
    if n == 0:
        return SummaryStats()
    if col.kind is ColumnKind.NUMERIC:
        values = sorted(present)
        mean = sum(values) / n
        std = math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1)) if n >= 2 else None
        return SummaryStats(
            mean=mean,
            median=interpolated_quantile(values, 0.5),
            mode=_mode(present, numeric=True),
            std_dev=std,
            min=values[0],
            max=values[-1],
            q1=interpolated_quantile(values, 0.25),
            q3=interpolated_quantile(values, 0.75),
            distinct_count=len(set(values)),
            present_count=n,
            histogram=_numeric_histogram(values, bins),
        )
    if col.kind is ColumnKind.BOOLEAN:
        mode = min((v for v in present), key=lambda v: (-(present.count(v)), v))
    else:
        mode = _mode(present, numeric=False)
    return SummaryStats(
        mode=mode,
        distinct_count=len(set(present)),
        present_count=n,
        category_counts=_category_histogram(present, bins),
    )


@dataclass(frozen=True)
class QualityResult:
    """The full Data Quality pillar for one dataset."""

    completeness_overall: float
    completeness_per_column: dict[str, float]
    duplicate_fraction: float | None
    outlier_rate_per_column: dict[str, float | None]
    summary_per_column: dict[str, SummaryStats] = field(default_factory=dict)


def quality_profile(dataset: Dataset, bins: int = 10,
                    multiplier: float = TUKEY_MULTIPLIER) -> QualityResult:
    """Run every Data Quality operation; per-column failures become None."""
    overall, per_column = completeness(dataset)
    try:
        dupes: float | None = duplicate_fraction(dataset)
    except EmptyDataset:
        dupes = None
    outliers: dict[str, float | None] = {}
    for col in dataset.numeric_columns():
        try:
            outliers[col.name] = outlier_rate(col, multiplier)
        except MetricUndefined:
            outliers[col.name] = None
    summaries = {col.name: summary_stats(col, bins) for col in dataset.columns}
    return QualityResult(overall, per_column, dupes, outliers, summaries)
