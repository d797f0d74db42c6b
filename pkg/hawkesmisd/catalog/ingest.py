"""CSV ingestion into a normalized event catalog, plus summaries."""

import io
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from typing import Any, Dict, Literal, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hawkesmisd.catalog.events import EventCatalog, jitter, monthly_histogram, window_length
from hawkesmisd.exceptions import CatalogParseError, RowError, SchemaMappingError

logger = logging.getLogger(__name__)

NORMALIZED_DATE_COLUMN = "date"
NORMALIZED_MARK_COLUMN = "victims"
ISO_DATE_FORMAT = "%Y-%m-%d"

_TRUTHY = {"1", "true", "t", "yes", "y"}
_LINE_RE = re.compile(r"line (\d+)")


class ExcludePerpetrator(BaseModel):
    """Subtract one from the count when the named flag column is truthy."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    exclude_perpetrator_flag_column: str


class SchemaMapping(BaseModel):
    """How to read one source's CSV into the normalized schema."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    date_column: str
    date_format: str = ISO_DATE_FORMAT
    mark_column: str
    mark_rule: Union[Literal["as_is"], ExcludePerpetrator] = "as_is"
    window_start: date
    window_end: date
    definition_note: str = ""
    mark_threshold: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _window_ordered(self) -> "SchemaMapping":
        if self.window_end < self.window_start:
            raise ValueError(f"window_end {self.window_end} precedes window_start {self.window_start}")
        return self

    @property
    def flag_column(self) -> Optional[str]:
        if isinstance(self.mark_rule, ExcludePerpetrator):
            return self.mark_rule.exclude_perpetrator_flag_column
        return None

    @property
    def T(self) -> float:
        return window_length(self.window_start, self.window_end)


def normalized_mapping(window_start: date, window_end: date, **kwargs: Any) -> SchemaMapping:
    """Mapping for the normalized ``date,victims`` schema."""
    return SchemaMapping(
        date_column=NORMALIZED_DATE_COLUMN,
        date_format=ISO_DATE_FORMAT,
        mark_column=NORMALIZED_MARK_COLUMN,
        mark_rule="as_is",
        window_start=window_start,
        window_end=window_end,
        **kwargs,
    )


def _read_frame(csv_bytes: bytes) -> pd.DataFrame:
    try:
        return pd.read_csv(
            io.BytesIO(csv_bytes),
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError:
        raise CatalogParseError("input is empty; a header row is required") from None
    except pd.errors.ParserError as exc:
        match = _LINE_RE.search(str(exc))
        raise CatalogParseError(f"malformed CSV: {exc}", row=int(match.group(1)) if match else None) from exc
    except UnicodeDecodeError as exc:
        raise CatalogParseError(f"input is not valid UTF-8: {exc}") from exc


def _blank_rows(frame: pd.DataFrame) -> np.ndarray:
    blank = np.ones(len(frame), dtype=bool)
    for column in frame.columns:
        blank &= frame[column].fillna("").str.strip().eq("").to_numpy()
    return blank


def _first_bad(mask: pd.Series) -> Optional[int]:
    hits = np.flatnonzero(mask.to_numpy())
    return int(hits[0]) if hits.size else None


def ingest(
    csv_bytes: bytes,
    mapping: SchemaMapping,
    jitter_seed: Optional[int] = None,
) -> EventCatalog:
    """Parse a source CSV into a windowed, time-ordered catalog.

    Row numbers in errors count the header as row 1. Bad values fail the
    whole ingest; rows dated outside the window are dropped and counted.
    """
    frame = _read_frame(csv_bytes)
    columns = [str(c) for c in frame.columns]

    for column in (mapping.date_column, mapping.mark_column, mapping.flag_column):
        if column is not None and column not in columns:
            raise SchemaMappingError(column, columns)

    # Physical file lines; blank lines keep their place in the count.
    row_numbers = np.arange(len(frame), dtype=np.int64) + 2
    blank = _blank_rows(frame)
    frame = frame.loc[~blank].reset_index(drop=True)
    row_numbers = row_numbers[~blank]

    raw_dates = frame[mapping.date_column].str.strip()
    dates = pd.to_datetime(raw_dates, format=mapping.date_format, errors="coerce")

    raw_marks = frame[mapping.mark_column].str.strip()
    numeric = pd.to_numeric(raw_marks, errors="coerce").astype(float)
    marks = numeric.copy()
    if mapping.flag_column is not None:
        flags = frame[mapping.flag_column].str.strip().str.lower().isin(_TRUTHY)
        marks = marks - flags.astype(int)

    bad_date = dates.isna()
    bad_mark = numeric.isna() | ~np.isfinite(numeric) | (numeric != np.floor(numeric))
    low_mark = ~bad_mark & (marks < 1)

    candidates = [
        (_first_bad(bad_date), mapping.date_column, raw_dates, "unparseable date"),
        (_first_bad(bad_mark), mapping.mark_column, raw_marks, "unparseable mark"),
        (_first_bad(low_mark), mapping.mark_column, raw_marks, "mark must be >= 1"),
    ]
    failures = [c for c in candidates if c[0] is not None]
    if failures:
        idx, column, raw, reason = min(failures, key=lambda c: c[0])
        raise RowError(int(row_numbers[idx]), column, raw.iloc[idx], reason)

    days = (dates.dt.normalize() - pd.Timestamp(mapping.window_start)).dt.days.to_numpy()
    last_day = (mapping.window_end - mapping.window_start).days
    in_window = (days >= 0) & (days <= last_day)
    dropped = int((~in_window).sum())

    catalog = EventCatalog.from_arrays(
        days[in_window].astype(float),
        marks.to_numpy()[in_window].astype(np.int64),
        mapping.window_start,
        mapping.T,
        source_rows=row_numbers[in_window],
        definition_note=mapping.definition_note,
        dropped=dropped,
        mark_threshold=mapping.mark_threshold,
    )
    logger.debug(f"Parsed {len(frame)} rows; kept {catalog.n}, dropped {dropped}")

    if jitter_seed is not None:
        catalog = jitter(catalog, jitter_seed)
    return catalog


def serialize(catalog: EventCatalog) -> bytes:
    """Write the normalized ``date,victims`` CSV."""
    frame = pd.DataFrame(
        {
            NORMALIZED_DATE_COLUMN: [d.isoformat() for d in catalog.event_dates()],
            NORMALIZED_MARK_COLUMN: catalog.marks.astype(int),
        }
    )
    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


@dataclass
class CatalogSummary:
    """Counts and ranges describing a catalog."""

    n: int
    T: float
    window_start: date
    window_end: date
    mark_min: Optional[int]
    mark_max: Optional[int]
    monthly_counts: Dict[str, int]
    mark_distribution: Dict[int, int] = field(default_factory=dict)
    below_threshold: int = 0
    dropped: int = 0
    definition_note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-ready dictionary."""
        return {
            "n": self.n,
            "T": self.T,
            "window_start": self.window_start.isoformat(),
            "window_end": self.window_end.isoformat(),
            "mark_min": self.mark_min,
            "mark_max": self.mark_max,
            "monthly_counts": self.monthly_counts,
            "mark_distribution": {str(k): v for k, v in self.mark_distribution.items()},
            "below_threshold": self.below_threshold,
            "dropped": self.dropped,
            "definition_note": self.definition_note,
        }


def summarize(catalog: EventCatalog) -> CatalogSummary:
    """Totals, mark range and per-month counts over the whole window."""
    marks = catalog.marks
    below = 0
    if catalog.mark_threshold is not None:
        below = int(np.sum(marks < catalog.mark_threshold))
        if below:
            logger.info(f"{below} events have marks below the threshold {catalog.mark_threshold}")

    return CatalogSummary(
        n=catalog.n,
        T=catalog.T,
        window_start=catalog.window_start,
        window_end=catalog.window_end,
        mark_min=int(marks.min()) if marks.size else None,
        mark_max=int(marks.max()) if marks.size else None,
        monthly_counts=dict(monthly_histogram(catalog.times, catalog.window_start, catalog.T)),
        mark_distribution=dict(sorted(Counter(int(m) for m in marks).items())),
        below_threshold=below,
        dropped=catalog.dropped,
        definition_note=catalog.definition_note,
    )
