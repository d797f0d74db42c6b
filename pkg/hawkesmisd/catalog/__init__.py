"""Event catalog ingestion and normalization."""

from hawkesmisd.catalog.events import (
    Event,
    EventCatalog,
    MonthSpan,
    jitter,
    month_spans,
    monthly_histogram,
    window_length,
)
from hawkesmisd.catalog.ingest import (
    CatalogSummary,
    ExcludePerpetrator,
    SchemaMapping,
    ingest,
    normalized_mapping,
    serialize,
    summarize,
)

__all__ = [
    "Event",
    "EventCatalog",
    "MonthSpan",
    "CatalogSummary",
    "ExcludePerpetrator",
    "SchemaMapping",
    "ingest",
    "jitter",
    "month_spans",
    "monthly_histogram",
    "normalized_mapping",
    "serialize",
    "summarize",
    "window_length",
]
