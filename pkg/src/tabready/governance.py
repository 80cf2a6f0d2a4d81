"""Governance and Understandability pillars: re-identification risk and
FAIR-checklist scoring.

Re-identification risk follows the prosecutor model: records are grouped
into equivalence classes by exact match on the quasi-identifier tuple
(missing compares equal to missing), and each record's risk is one over its
class size. The FAIR score is a fixed 12-item checklist, three items per
principle, equally weighted.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .dataset import FAIR_ITEM_IDS, Dataset, MetadataDescriptor
from .errors import EmptyDataset, NoQuasiIdentifiers, UnknownColumn

# Free-form descriptor fields that satisfy a checklist item when non-empty.
_AUTO_SATISFY = {
    "F1": "identifier",
    "A1": "access_protocol",
    "R1": "license",
    "R2": "provenance",
}

FAIR_ITEM_DESCRIPTIONS = {
    "F1": "persistent identifier present",
    "F2": "rich title/description present",
    "F3": "searchable-registry entry claimed",
    "A1": "retrieval protocol stated",
    "A2": "metadata accessible independent of data",
    "A3": "access conditions stated",
    "I1": "standard format used",
    "I2": "controlled vocabulary claimed",
    "I3": "qualified references to other data",
    "R1": "license present",
    "R2": "provenance present",
    "R3": "community standard claimed",
}


@dataclass(frozen=True)
class ReidRisk:
    """Prosecutor-model re-identification risk over QI equivalence classes."""

    k_anonymity: int
    proportion_unique: float
    average_risk: float
    class_size_histogram: dict[int, int]


@dataclass(frozen=True)
class FairScore:
    per_principle: dict[str, float]
    overall: float
    missing_items: tuple[str, ...]
    warnings: tuple[str, ...] = ()


def reid_risk(dataset: Dataset, quasi_identifiers: set[str] | frozenset[str]) -> ReidRisk:
    """Risk profile from exact-match equivalence classes on the QI tuple.

    Raises:
        NoQuasiIdentifiers: the QI set is empty.
        UnknownColumn: a QI column does not exist.
        EmptyDataset: the dataset has no rows.
    """
    if not quasi_identifiers:
        raise NoQuasiIdentifiers("re-identification risk needs >= 1 quasi-identifier")
    names = set(dataset.column_names)
    missing = sorted(set(quasi_identifiers) - names)
    if missing:
        raise UnknownColumn(f"unknown quasi-identifier columns: {missing}")
    if dataset.row_count < 1:
        raise EmptyDataset("re-identification risk needs at least one row")

    qi_columns = [dataset.column(name) for name in sorted(quasi_identifiers)]
    tuples = list(zip(*(c.values for c in qi_columns)))
    class_sizes = Counter(tuples)

    n = dataset.row_count
    k = min(class_sizes.values())
    unique_records = sum(size for size in class_sizes.values() if size == 1)
    average = sum(size * (1.0 / size) for size in class_sizes.values()) / n
    histogram = Counter(class_sizes.values())
    return ReidRisk(
        k_anonymity=k,
        proportion_unique=unique_records / n,
        average_risk=average,
        class_size_histogram=dict(histogram),
    )


def fair_score(descriptor: MetadataDescriptor | None) -> FairScore:
    """Score the 12-item FAIR checklist from a metadata descriptor.

    Non-empty identifier/access_protocol/license/provenance fields satisfy
    their items even when the checklist leaves them unticked. A missing
    descriptor scores 0 everywhere with a warning.
    """
    warnings: list[str] = []
    satisfied: dict[str, bool] = {item: False for item in FAIR_ITEM_IDS}
    if descriptor is None:
        warnings.append("no metadata descriptor supplied; all items unsatisfied")
    else:
        for item in FAIR_ITEM_IDS:
            satisfied[item] = bool(descriptor.checklist.get(item, False))
        for item, field_name in _AUTO_SATISFY.items():
            value = getattr(descriptor, field_name)
            if value is not None and str(value).strip():
                satisfied[item] = True

    per_principle = {
        principle: sum(satisfied[f"{principle}{i}"] for i in (1, 2, 3)) / 3.0
        for principle in ("F", "A", "I", "R")
    }
    overall = sum(per_principle.values()) / 4.0
    missing_items = tuple(item for item in FAIR_ITEM_IDS if not satisfied[item])
    return FairScore(
        per_principle=per_principle,
        overall=overall,
        missing_items=missing_items,
        warnings=tuple(warnings),
    )
