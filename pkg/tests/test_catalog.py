"""Tests for catalog types, ingest and summaries."""

from datetime import date

import numpy as np
import pytest
from pydantic import ValidationError

from hawkesmisd.catalog.events import EventCatalog, jitter, month_spans, monthly_histogram, window_length
from hawkesmisd.catalog.ingest import (
    ExcludePerpetrator,
    SchemaMapping,
    ingest,
    normalized_mapping,
    serialize,
    summarize,
)
from hawkesmisd.exceptions import CatalogError, CatalogParseError, RowError, SchemaMappingError

FEB_2005 = normalized_mapping(date(2005, 2, 1), date(2005, 2, 28))


def test_ingest_sorts_and_offsets():
    """Dates become day offsets from the window start, in time order."""
    catalog = ingest(b"date,victims\n2005-02-10,4\n2005-02-01,3\n", FEB_2005)
    np.testing.assert_array_equal(catalog.times, [0.0, 9.0])
    np.testing.assert_array_equal(catalog.marks, [3, 4])
    assert [e.source_row for e in catalog.events] == [3, 2]
    assert catalog.T == 28.0


def test_ingest_bad_mark_names_row():
    """An unparseable count fails with its row number."""
    with pytest.raises(RowError) as exc_info:
        ingest(b"date,victims\n2005-02-10,notanumber\n", FEB_2005)
    assert exc_info.value.row == 2
    assert exc_info.value.column == "victims"


def test_ingest_bad_date_names_row():
    """The earliest bad row is reported."""
    with pytest.raises(RowError) as exc_info:
        ingest(b"date,victims\n2005-02-10,4\n2005-02-10,x\n10/02/2005,4\n", FEB_2005)
    assert exc_info.value.row == 3


def test_ingest_mark_below_one():
    """Zero victims is not an event."""
    with pytest.raises(RowError, match="mark must be >= 1"):
        ingest(b"date,victims\n2005-02-10,0\n", FEB_2005)


def test_ingest_missing_column():
    """The error names the missing column."""
    mapping = SchemaMapping(
        date_column="Date", mark_column="Killed", window_start=date(2005, 2, 1), window_end=date(2005, 2, 28)
    )
    with pytest.raises(SchemaMappingError, match="Killed"):
        ingest(b"Date,Victims\n2005-02-10,4\n", mapping)


def test_ingest_malformed_csv():
    """Ragged rows are a parse error with a row number."""
    with pytest.raises(CatalogParseError) as exc_info:
        ingest(b"date,victims\n2005-02-01,3\n2005-02-02,3,7,8\n", FEB_2005)
    assert exc_info.value.row == 3


def test_ingest_drops_rows_outside_window():
    """Out-of-window rows are counted, not kept."""
    catalog = ingest(b"date,victims\n2005-01-31,4\n2005-02-03,5\n2005-03-01,2\n", FEB_2005)
    assert catalog.n == 1
    assert catalog.dropped == 2


def test_ingest_empty_after_windowing():
    """An empty result is a valid catalog."""
    catalog = ingest(b"date,victims\n2004-01-01,4\n", FEB_2005)
    assert catalog.n == 0
    assert summarize(catalog).n == 0


def test_ingest_custom_schema_excludes_perpetrator():
    """A truthy flag removes the perpetrator from the count."""
    mapping = SchemaMapping(
        date_column="Incident Date",
        date_format="%m/%d/%Y",
        mark_column="Victims",
        mark_rule=ExcludePerpetrator(exclude_perpetrator_flag_column="ShooterKilled"),
        window_start=date(2005, 2, 1),
        window_end=date(2005, 2, 28),
    )
    csv = b"Incident Date,Victims,ShooterKilled\n02/03/2005,5,yes\n02/04/2005,4,no\n"
    catalog = ingest(csv, mapping)
    np.testing.assert_array_equal(catalog.marks, [4, 4])


def test_mapping_json_form():
    """The rule's JSON object form validates into ExcludePerpetrator."""
    mapping = SchemaMapping.model_validate(
        {
            "date_column": "d",
            "mark_column": "m",
            "mark_rule": {"exclude_perpetrator_flag_column": "f"},
            "window_start": "2005-02-01",
            "window_end": "2013-01-31",
            "mark_threshold": 4,
        }
    )
    assert mapping.flag_column == "f"
    assert mapping.T == 2922.0


def test_mapping_rejects_reversed_window():
    """The window must not end before it starts."""
    with pytest.raises(ValidationError):
        normalized_mapping(date(2005, 3, 1), date(2005, 2, 1))


def test_summary_monthly_counts():
    """Months cover the window, zero months included."""
    catalog = ingest(b"date,victims\n2005-02-10,4\n2005-02-01,3\n", FEB_2005)
    summary = summarize(catalog)
    assert summary.monthly_counts == {"2005-02": 2}
    assert summary.mark_distribution == {3: 1, 4: 1}
    assert sum(summary.monthly_counts.values()) == summary.n


def test_monthly_histogram_empty_two_months():
    """An empty catalog over two months counts (0, 0)."""
    assert monthly_histogram([], date(2005, 2, 1), 59.0) == [("2005-02", 0), ("2005-03", 0)]


def test_month_spans_clip_to_window():
    """Partial months count only their days in the window."""
    spans = month_spans(date(2005, 2, 15), 30.0)
    assert [s.label for s in spans] == ["2005-02", "2005-03"]
    assert [s.days for s in spans] == [14.0, 16.0]


def test_summary_flags_below_threshold():
    """Marks under the source threshold are kept but counted."""
    mapping = normalized_mapping(date(2005, 2, 1), date(2005, 2, 28), mark_threshold=4)
    catalog = ingest(b"date,victims\n2005-02-10,4\n2005-02-01,3\n", mapping)
    summary = summarize(catalog)
    assert catalog.n == 2
    assert summary.below_threshold == 1


def test_serialize_then_ingest():
    """The normalized CSV reads back to the same catalog."""
    catalog = ingest(b"date,victims\n2005-02-10,4\n2005-02-01,3\n2005-02-10,6\n", FEB_2005)
    text = serialize(catalog)
    assert text.startswith(b"date,victims\n2005-02-01,3\n")
    again = ingest(text, FEB_2005)
    np.testing.assert_array_equal(again.times, catalog.times)
    np.testing.assert_array_equal(again.marks, catalog.marks)


def test_window_length_inclusive():
    """Both end days count."""
    assert window_length(date(2005, 2, 1), date(2013, 1, 31)) == 2922.0
    with pytest.raises(CatalogError):
        window_length(date(2005, 2, 2), date(2005, 2, 1))


def test_catalog_rejects_unsorted():
    """Events must arrive in time order."""
    from hawkesmisd.catalog.events import Event

    with pytest.raises(CatalogError):
        EventCatalog(events=(Event(5.0, 1, 2), Event(1.0, 1, 3)), window_start=date(2005, 2, 1), T=10.0)


def test_ties_ordered_by_source_row(make_catalog):
    """Same-day events keep their input order."""
    catalog = ingest(b"date,victims\n2005-02-03,7\n2005-02-03,2\n", FEB_2005)
    assert [e.mark for e in catalog.events] == [7, 2]


def test_jitter_is_seeded(make_catalog):
    """Jitter stays within the day and repeats for a seed."""
    catalog = make_catalog([0, 0, 3, 3, 3, 9], T=10)
    first, second = jitter(catalog, 1), jitter(catalog, 1)
    np.testing.assert_array_equal(first.times, second.times)
    assert np.all(np.floor(np.sort(first.times)) == np.sort(catalog.times))
    assert first.times.max() < catalog.T
