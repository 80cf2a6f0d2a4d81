"""Fairness pillar: class imbalance, representation rates, statistical parity.

Class imbalance is the normalized-entropy deficit 1 - H(p)/ln(K), a [0,1]
score that is 0 for a perfectly balanced label distribution and 1 for a
single observed class; the raw max/min count ratio is reported alongside.
Statistical parity is the max-min gap of positive-outcome rates across
sensitive groups, computed over rows where target and sensitive are both
present.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .dataset import Column, ColumnKind, parse_numeric
from .errors import EmptyColumn, EmptyTarget, NoOverlap, UnknownPositiveLabel

_BOOL_TOKENS = {"true": True, "false": False, "0": False, "1": True}


def shannon_entropy(probabilities: list[float]) -> float:
    """Shannon entropy in nats; zero-probability terms contribute nothing."""
    return -sum(p * math.log(p) for p in probabilities if p > 0.0)


@dataclass(frozen=True)
class ClassDistribution:
    counts: dict[object, int]
    imbalance_score: float
    imbalance_ratio: float | None
    single_class: bool


@dataclass(frozen=True)
class ParityResult:
    group_rates: dict[object, float]
    spd: float
    representation: dict[object, float]
    warnings: tuple[str, ...] = ()


def class_distribution(target: Column) -> ClassDistribution:
    """Label counts plus the imbalance score over present target values.

    Raises:
        EmptyTarget: the column has no present values.
    """
    present = target.present()
    if not present:
        raise EmptyTarget(f"target column {target.name!r} has no present values")
    counts = Counter(present)
    k = len(counts)
    n = len(present)
    if k == 1:
        return ClassDistribution(dict(counts), 1.0, None, True)
    entropy = shannon_entropy([c / n for c in counts.values()])
    score = 1.0 - entropy / math.log(k)
    ratio = max(counts.values()) / min(counts.values())
    return ClassDistribution(dict(counts), score, ratio, False)


def representation_rate(sensitive: Column) -> dict[object, float]:
    """Per-group fraction of the column's present cells.

    Raises:
        EmptyColumn: the column has no present values.
    """
    present = sensitive.present()
    if not present:
        raise EmptyColumn(f"column {sensitive.name!r} has no present values")
    n = len(present)
    return {group: count / n for group, count in Counter(present).items()}


def coerce_label(column: Column, text: str) -> object:
    """Convert a user-supplied label string into the column's cell type."""
    if column.kind is ColumnKind.NUMERIC:
        value = parse_numeric(text.strip())
        if value is None:
            raise UnknownPositiveLabel(
                f"label {text!r} is not numeric but target {column.name!r} is"
            )
        return value
    if column.kind is ColumnKind.BOOLEAN:
        try:
            return _BOOL_TOKENS[text.strip().lower()]
        except KeyError:
            raise UnknownPositiveLabel(
                f"label {text!r} is not boolean but target {column.name!r} is"
            ) from None
    return text


def statistical_parity(target: Column, positive_label: object,
                       sensitive: Column) -> ParityResult:
    """Positive-outcome rate per sensitive group and their max-min gap.

    Rows where either cell is missing are excluded pairwise. Groups whose
    every row was excluded are omitted from the rates and listed in a
    warning; representation is reported over the sensitive column's present
    cells regardless of exclusion.

    Raises:
        UnknownPositiveLabel: the label never occurs among present target values.
        NoOverlap: every row was excluded.
    """
    if len(target) != len(sensitive):
        raise ValueError("target and sensitive columns are not aligned")
    target_domain = set(target.present())
    if positive_label not in target_domain:
        raise UnknownPositiveLabel(
            f"positive label {positive_label!r} not found in target {target.name!r}"
        )

    included = [
        (t, s)
        for t, s in zip(target.values, sensitive.values)
        if t is not None and s is not None
    ]
    if not included:
        raise NoOverlap("no rows with both target and sensitive present")

    totals: Counter = Counter(s for _, s in included)
    positives: Counter = Counter(s for t, s in included if t == positive_label)
    group_rates = {g: positives.get(g, 0) / totals[g] for g in totals}

    warnings: list[str] = []
    excluded_groups = sorted(
        str(g) for g in set(sensitive.present()) - set(totals)
    )
    if excluded_groups:
        warnings.append(
            f"groups with no complete rows omitted: {', '.join(excluded_groups)}"
        )
    if len(group_rates) == 1:
        warnings.append("only one sensitive group present; parity gap is trivially 0")

    spd = max(group_rates.values()) - min(group_rates.values())
    return ParityResult(
        group_rates=group_rates,
        spd=spd,
        representation=representation_rate(sensitive),
        warnings=tuple(warnings),
    )
