"""Impact-on-AI pillar: pairwise feature correlations and feature relevance.

Degenerate inputs are first-class here: a zero-variance feature makes its
correlations undefined, and undefinedness is carried as explicit None values
plus an undefined-feature list. Nothing in this module ever emits NaN or
infinity; the one thing a readiness tool must not do with an all-constant
feature is silently hide it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .dataset import Column, ColumnKind, Dataset
from .errors import EmptyOverlap, SingleClassTarget, TooFewNumericColumns
from .fairness import shannon_entropy


@dataclass(frozen=True)
class CorrelationMatrix:
    """Pearson correlations over pairwise-complete rows; None = undefined."""

    features: tuple[str, ...]
    entries: tuple[tuple[float | None, ...], ...]
    effective_n: tuple[tuple[int, ...], ...]
    undefined_features: frozenset[str]


@dataclass(frozen=True)
class RelevanceScores:
    """Normalized mutual information of each feature with the target."""

    scores: dict[str, float | None]
    bins: int
    reasons: dict[str, str]


def _pearson(pairs: list[tuple[float, float]]) -> float | None:
    n = len(pairs)
    if n < 2:
        return None
    mean_x = sum(x for x, _ in pairs) / n
    mean_y = sum(y for _, y in pairs) / n
    sxx = sum((x - mean_x) ** 2 for x, _ in pairs)
    syy = sum((y - mean_y) ** 2 for _, y in pairs)
    if sxx == 0.0 or syy == 0.0:
        return None
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in pairs)
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_matrix(dataset: Dataset) -> CorrelationMatrix:
    """Pearson correlation for every numeric column pair.

    A pair is undefined when fewer than 2 complete rows remain or either
    operand has zero variance over them. Globally constant columns
    (including all-zero and all-missing ones) land in undefined_features
    and their whole row/column is undefined, diagonal included.

    Raises:
        TooFewNumericColumns: fewer than 2 numeric columns.
    """
    numeric = dataset.numeric_columns()
    if len(numeric) < 2:
        raise TooFewNumericColumns(
            f"correlation matrix needs >= 2 numeric columns, found {len(numeric)}"
        )
    names = tuple(c.name for c in numeric)
    undefined = frozenset(
        c.name for c in numeric if len(set(c.present())) <= 1
    )

    size = len(numeric)
    entries: list[list[float | None]] = [[None] * size for _ in range(size)]
    counts: list[list[int]] = [[0] * size for _ in range(size)]
    for i, ci in enumerate(numeric):
        present_i = ci.present()
        counts[i][i] = len(present_i)
        if len(set(present_i)) > 1:
            entries[i][i] = 1.0
        for j in range(i + 1, size):
            cj = numeric[j]
            pairs = [
                (x, y)
                for x, y in zip(ci.values, cj.values)
                if x is not None and y is not None
            ]
            counts[i][j] = counts[j][i] = len(pairs)
            r = _pearson(pairs)
            entries[i][j] = entries[j][i] = r

    return CorrelationMatrix(
        features=names,
        entries=tuple(tuple(row) for row in entries),
        effective_n=tuple(tuple(row) for row in counts),
        undefined_features=undefined,
    )


def _discretize(values: list, kind: ColumnKind, bins: int) -> list[int]:
    """Map feature values to discrete symbols: bin indices or category ids."""
    if kind is ColumnKind.NUMERIC:
        lo, hi = min(values), max(values)
        if lo == hi:
            return [0] * len(values)
        width = (hi - lo) / bins
        return [min(int((v - lo) / width), bins - 1) for v in values]
    symbols = {v: i for i, v in enumerate(dict.fromkeys(values))}
    return [symbols[v] for v in values]


def feature_relevance(feature: Column, target: Column, bins: int = 10) -> float:
    """Normalized mutual information I(X;Y) / min(H(X), H(Y)) in [0, 1].

    X is the feature discretized into `bins` equal-width bins (categorical
    features use their categories); entropies use natural logs and are taken
    over the rows where both cells are present.

    Raises:
        EmptyOverlap: no row has both cells present.
        SingleClassTarget: target or discretized feature is constant over
            the complete rows, so an entropy denominator is zero.
    """
    pairs = [
        (x, y)
        for x, y in zip(feature.values, target.values)
        if x is not None and y is not None
    ]
    if not pairs:
        raise EmptyOverlap(
            f"no complete rows between {feature.name!r} and {target.name!r}"
        )
    xs = _discretize([x for x, _ in pairs], feature.kind, bins)
    ys = [y for _, y in pairs]
    n = len(pairs)

    joint = Counter(zip(xs, ys))
    px = Counter(xs)
    py = Counter(ys)
    h_x = shannon_entropy([c / n for c in px.values()])
    h_y = shannon_entropy([c / n for c in py.values()])
    if h_x == 0.0 or h_y == 0.0:
        raise SingleClassTarget(
            f"degenerate entropy for pair ({feature.name!r}, {target.name!r})"
        )
    mutual = 0.0
    for (x, y), c in joint.items():
        p_xy = c / n
        mutual += p_xy * math.log(p_xy * n * n / (px[x] * py[y]))
    nmi = mutual / min(h_x, h_y)
    return max(0.0, min(1.0, nmi))


def relevance_scores(dataset: Dataset, target: Column, bins: int = 10) -> RelevanceScores:
    """NMI with the target for every non-target column.

    Features whose score cannot be computed (constant over complete rows,
    no overlap) get a None score with a reason attached.

    Raises:
        SingleClassTarget: the target has fewer than 2 observed classes, so
            every score would be undefined.
    """
    observed_classes = set(target.present())
    if len(observed_classes) < 2:
        raise SingleClassTarget(
            f"target {target.name!r} has {len(observed_classes)} observed class(es)"
        )
    scores: dict[str, float | None] = {}
    reasons: dict[str, str] = {}
    for col in dataset.columns:
        if col.name == target.name:
            continue
        try:
            scores[col.name] = feature_relevance(col, target, bins)
        except EmptyOverlap:
            scores[col.name] = None
            reasons[col.name] = "NO_OVERLAP"
        except SingleClassTarget:
            scores[col.name] = None
            reasons[col.name] = "ZERO_ENTROPY"
    return RelevanceScores(scores=scores, bins=bins, reasons=reasons)
