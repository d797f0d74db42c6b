"""Tests for CSV ingest row accounting and the normalized round trip."""

from datetime import date, timedelta

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hawkesmisd.catalog.ingest import ingest, normalized_mapping, serialize
from hawkesmisd.exceptions import RowError

FEB_2005 = normalized_mapping(date(2005, 2, 1), date(2005, 2, 28))


def test_blank_line_keeps_file_line_numbers():
    """A blank line still counts toward the reported row."""
    with pytest.raises(RowError) as exc_info:
        ingest(b"date,victims\n2005-02-01,3\n\n2005-02-10,notanumber\n", FEB_2005)
    assert exc_info.value.row == 4
    assert exc_info.value.value == "notanumber"


def test_blank_lines_skipped_in_source_rows():
    """Blank lines are not events but shift the source rows after them."""
    catalog = ingest(b"date,victims\n2005-02-01,3\n\n\n2005-02-10,4\n\n", FEB_2005)
    assert catalog.n == 2
    assert [e.source_row for e in catalog.events] == [2, 5]


@pytest.mark.parametrize("raw", ["inf", "-inf", "1e400", "nan"])
def test_non_finite_mark_names_row(raw):
    """Infinite or missing counts fail on their row."""
    body = f"date,victims\n2005-02-01,3\n2005-02-02,{raw}\n".encode()
    with pytest.raises(RowError, match="unparseable mark") as exc_info:
        ingest(body, FEB_2005)
    assert exc_info.value.row == 3
    assert exc_info.value.column == "victims"


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=27), st.integers(min_value=1, max_value=500)),
        min_size=1,
        max_size=40,
    )
)
def test_ingest_serialize_ingest_is_stable(rows):
    """Serializing and re-reading reproduces the catalog and its bytes."""
    lines = ["date,victims"]
    lines += [f"{(FEB_2005.window_start + timedelta(days=day)).isoformat()},{mark}" for day, mark in rows]
    first = ingest(("\n".join(lines) + "\n").encode(), FEB_2005)

    text = serialize(first)
    again = ingest(text, FEB_2005)

    np.testing.assert_array_equal(again.times, first.times)
    np.testing.assert_array_equal(again.marks, first.marks)
    assert serialize(again) == text
    assert sorted(int(m) for m in first.marks) == sorted(mark for _, mark in rows)
