"""Exception hierarchy for the readiness inspector.

Errors are split into input problems (bad CSV, bad config), metric
preconditions that signal "not applicable" rather than failure, and
protocol violations in the federated flow.
"""

from __future__ import annotations


class TabReadyError(Exception):
    """Base class for all errors raised by this package."""


# --- ingestion -------------------------------------------------------------

class MalformedCsv(TabReadyError):
    """CSV could not be parsed; carries 1-based row/column indices when known."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyInput(TabReadyError):
    """Input byte stream contained no header row."""


class DuplicateHeader(TabReadyError):
    """Two header cells share the same name."""


class UnknownColumn(TabReadyError):
    """A role or quasi-identifier references a column that does not exist."""


# --- metric preconditions --------------------------------------------------

class MetricUndefined(TabReadyError):
    """The metric is not applicable to this input (too few values, no target, ...).

    This signals "not applicable", not failure; callers usually turn it into
    an `undefined` status with an explanatory note.
    """


class EmptyDataset(TabReadyError):
    """Operation requires at least one row."""


class EmptyColumn(TabReadyError):
    """Operation requires at least one present value."""


class EmptyTarget(EmptyColumn):
    """Target column has no present values."""


class UnknownPositiveLabel(TabReadyError):
    """Configured positive label never occurs in the target column."""


class NoOverlap(TabReadyError):
    """Pairwise-complete row exclusion removed every row."""


class EmptyOverlap(TabReadyError):
    """No row has both the feature and the target present."""


class TooFewNumericColumns(TabReadyError):
    """Correlation matrix needs at least two numeric columns."""


class SingleClassTarget(MetricUndefined):
    """Relevance scoring needs a target with at least two observed classes."""


class NoQuasiIdentifiers(TabReadyError):
    """Re-identification risk needs a non-empty quasi-identifier set."""


# --- configuration / reporting ---------------------------------------------

class InvalidConfig(TabReadyError):
    """Evaluation config violates its invariants (unknown metric, missing label, ...)."""


class ReportBuildError(TabReadyError):
    """Report assembly failed (duplicate metric id)."""


# --- federated protocol ----------------------------------------------------

class SchemaMismatch(TabReadyError):
    """Client schema fingerprint differs from the run's expected fingerprint."""


class MixedRuns(TabReadyError):
    """Summaries from different run ids cannot be merged."""


class MixedSchemas(TabReadyError):
    """Summaries with different schema fingerprints cannot be merged."""


class UnknownClient(TabReadyError):
    """Submission from a client id outside the run's expected set."""


class LateSubmission(TabReadyError):
    """Submission arrived after the run closed."""


class MetricFailure(TabReadyError):
    """A single metric failed; evaluation continues and reports the cause."""

    def __init__(self, metric_id: str, cause: str):
        super().__init__(f"{metric_id}: {cause}")
        self.metric_id = metric_id
        self.cause = cause


# --- fl harness ------------------------------------------------------------

class InvalidSpec(TabReadyError):
    """Synthetic data spec violates its invariants."""


class NonBinaryTarget(TabReadyError):
    """Federated training requires exactly two observed classes overall."""


class NoHealthyClients(TabReadyError):
    """Every client was flagged; the exclusion arm has nothing to train on."""
