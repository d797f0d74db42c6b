"""Event and catalog types, calendar helpers and tie-breaking jitter."""

import logging
import math
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from hawkesmisd.exceptions import CatalogError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Event:
    """One marked event: days since window start, victim count, input row."""

    t: float
    mark: int
    source_row: int


@dataclass(frozen=True)
class MonthSpan:
    """A calendar month clipped to the catalog window, in window days."""

    label: str  # YYYY-MM
    start: float
    end: float

    @property
    def days(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class EventCatalog:
    """Time-ordered marked events on the window [0, T] (days).

    Events are sorted by t with ties broken by ``source_row``.
    """

    events: Tuple[Event, ...]
    window_start: date
    T: float
    definition_note: str = ""
    dropped: int = 0
    mark_threshold: Optional[int] = None
    _times: np.ndarray = field(init=False, repr=False, compare=False)
    _marks: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.T > 0:
            raise CatalogError(f"window length T must be positive, got {self.T}")
        events = tuple(self.events)
        object.__setattr__(self, "events", events)

        times = np.fromiter((e.t for e in events), dtype=float, count=len(events))
        marks = np.fromiter((e.mark for e in events), dtype=np.int64, count=len(events))
        rows = np.fromiter((e.source_row for e in events), dtype=np.int64, count=len(events))

        if times.size:
            if times.min() < 0 or times.max() > self.T:
                raise CatalogError(f"event times must lie in [0, {self.T}]")
            if marks.min() < 1:
                raise CatalogError("event marks must be >= 1")
            dt = np.diff(times)
            if np.any(dt < 0) or np.any((dt == 0) & (np.diff(rows) < 0)):
                raise CatalogError("events must be sorted by time, ties by source_row")

        times.setflags(write=False)
        marks.setflags(write=False)
        object.__setattr__(self, "_times", times)
        object.__setattr__(self, "_marks", marks)

    @classmethod
    def from_arrays(
        cls,
        times: Sequence[float],
        marks: Sequence[int],
        window_start: date,
        T: float,
        source_rows: Optional[Sequence[int]] = None,
        **kwargs,
    ) -> "EventCatalog":
        """Build a catalog from unsorted columns, sorting by (t, source_row)."""
        times = np.asarray(times, dtype=float)
        marks = np.asarray(marks, dtype=np.int64)
        if source_rows is None:
            source_rows = np.arange(times.size)
        rows = np.asarray(source_rows, dtype=np.int64)
        order = np.lexsort((rows, times))
        events = tuple(
            Event(t=float(times[i]), mark=int(marks[i]), source_row=int(rows[i])) for i in order
        )
        return cls(events=events, window_start=window_start, T=float(T), **kwargs)

    @property
    def n(self) -> int:
        return len(self.events)

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def marks(self) -> np.ndarray:
        return self._marks

    @property
    def window_end(self) -> date:
        """Last calendar day covered by the window."""
        return self.window_start + timedelta(days=max(math.ceil(self.T) - 1, 0))

    def event_dates(self) -> List[date]:
        """Calendar date of each event (fractional days truncated)."""
        return [self.window_start + timedelta(days=int(math.floor(t))) for t in self._times]


def window_length(window_start: date, window_end: date) -> float:
    """Window length in days, counting both end days in full."""
    if window_end < window_start:
        raise CatalogError(f"window end {window_end} precedes window start {window_start}")
    return float((window_end - window_start).days + 1)


def month_spans(window_start: date, T: float) -> List[MonthSpan]:
    """Calendar months overlapping [0, T], clipped to the window."""
    end_date = window_start + timedelta(days=max(math.ceil(T) - 1, 0))
    spans = []
    for period in pd.period_range(window_start, end_date, freq="M"):
        first = period.start_time.date()
        after = (period + 1).start_time.date()
        start = max((first - window_start).days, 0)
        end = min((after - window_start).days, T)
        spans.append(MonthSpan(label=str(period), start=float(start), end=float(end)))
    return spans


def monthly_histogram(times: Sequence[float], window_start: date, T: float) -> List[Tuple[str, int]]:
    """Count points per calendar month of the window, zero months included."""
    spans = month_spans(window_start, T)
    starts = np.array([s.start for s in spans])
    counts = np.zeros(len(spans), dtype=np.int64)
    times = np.asarray(times, dtype=float)
    if times.size:
        idx = np.clip(np.searchsorted(starts, times, side="right") - 1, 0, len(spans) - 1)
        counts = np.bincount(idx, minlength=len(spans))
    return [(span.label, int(c)) for span, c in zip(spans, counts)]


def jitter(catalog: EventCatalog, seed: int) -> EventCatalog:
    """Break same-day ties with seeded uniform [0, 1) offsets.

    Offsets are drawn in source-row order so the result does not depend on
    the incoming event order. Offsets never push an event past T.
    """
    if catalog.n == 0:
        return catalog
    rng = np.random.default_rng(seed)
    by_row = sorted(catalog.events, key=lambda e: e.source_row)
    offsets = rng.random(len(by_row))
    times = np.array([e.t for e in by_row]) + offsets
    times = np.minimum(times, np.nextafter(catalog.T, 0.0))
    logger.debug(f"Jittered {catalog.n} event times with seed {seed}")
    return EventCatalog.from_arrays(
        times,
        [e.mark for e in by_row],
        catalog.window_start,
        catalog.T,
        source_rows=[e.source_row for e in by_row],
        definition_note=catalog.definition_note,
        dropped=catalog.dropped,
        mark_threshold=catalog.mark_threshold,
    )
