"""Tests for file readers, writers and run manifests."""

import json
from datetime import date

import pytest
from pydantic import ValidationError

from hawkesmisd.exceptions import CatalogError, CatalogWindowError, RowError
from hawkesmisd.io.files import (
    align_to_window,
    load_catalog,
    load_mark_distribution,
    load_model,
    write_csv,
    write_json,
)
from hawkesmisd.io.manifest import RunManifest, config_digest, sha256_file
from hawkesmisd.io.schemas import WindowSchema


def test_sha256_file(tmp_path):
    """Digest of a known input."""
    path = tmp_path / "abc.txt"
    path.write_bytes(b"abc")
    assert sha256_file(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_config_digest_ignores_key_order():
    """Settings hash the same however they were built."""
    assert config_digest({"a": 1, "b": [1, 2]}) == config_digest({"b": [1, 2], "a": 1})
    assert config_digest({"a": 1}) != config_digest({"a": 2})


def test_manifest_lists_outputs(tmp_path):
    """finish() records every file except itself."""
    source = tmp_path / "in.csv"
    source.write_text("date,victims\n")
    out = tmp_path / "out"
    out.mkdir()
    manifest = RunManifest.begin("fit", {"epsilon": 1e-5}, {"input": source}, seed=3)
    write_json(out / "model.json", {"mu": 1.0})
    path = manifest.finish(out, {"counters": {}})
    data = json.loads(path.read_text())
    assert data["outputs"] == ["model.json"]
    assert data["seed"] == 3
    assert data["input_digests"]["input"] == sha256_file(source)
    assert data["finished"] is not None


def test_write_json_is_canonical(tmp_path):
    """Two-space indentation and a trailing newline; NaN is refused."""
    text = write_json(tmp_path / "a.json", {"x": [1, 2]}).read_text()
    assert text.endswith("}\n")
    assert '  "x"' in text
    with pytest.raises(ValueError):
        write_json(tmp_path / "b.json", {"x": float("nan")})


def test_write_csv_header_when_empty(tmp_path):
    """Empty tables still carry their header."""
    text = write_csv(tmp_path / "t.csv", [], ["t", "label"]).read_text()
    assert text == "t,label\n"


def test_load_catalog_window_from_summary(tmp_path):
    """summary.json beside the CSV supplies the window."""
    (tmp_path / "catalog.csv").write_text("date,victims\n2005-02-03,4\n")
    write_json(tmp_path / "summary.json", {"window_start": "2005-02-01", "window_end": "2005-02-28"})
    catalog = load_catalog(tmp_path / "catalog.csv")
    assert catalog.T == 28.0
    assert catalog.times.tolist() == [2.0]


def test_load_catalog_flags_win_over_summary(tmp_path):
    """Explicit window arguments take precedence."""
    (tmp_path / "catalog.csv").write_text("date,victims\n2005-02-03,4\n")
    write_json(tmp_path / "summary.json", {"window_start": "2005-02-01", "window_end": "2005-02-28"})
    catalog = load_catalog(tmp_path / "catalog.csv", date(2005, 2, 3), date(2005, 2, 4))
    assert catalog.T == 2.0
    assert catalog.times.tolist() == [0.0]


def test_load_catalog_inferred_window(tmp_path):
    """Without a summary the window spans the first to the last event."""
    (tmp_path / "catalog.csv").write_text("date,victims\n2005-02-03,4\n2005-02-12,5\n")
    catalog = load_catalog(tmp_path / "catalog.csv")
    assert catalog.window_start == date(2005, 2, 3)
    assert catalog.T == 10.0


def test_load_catalog_empty_without_window(tmp_path):
    """An empty file cannot supply its own window."""
    (tmp_path / "catalog.csv").write_text("date,victims\n")
    with pytest.raises(CatalogError, match="window"):
        load_catalog(tmp_path / "catalog.csv")


def test_load_catalog_errors_name_the_file(tmp_path):
    """Row errors keep their type and row, and mention the path."""
    path = tmp_path / "catalog.csv"
    path.write_text("date,victims\n2005-02-03,4\n2005-02-04,inf\n")
    with pytest.raises(RowError) as exc_info:
        load_catalog(path, date(2005, 2, 1), date(2005, 2, 28))
    assert exc_info.value.row == 3
    assert str(exc_info.value).startswith(f"{path}: row 3")


def test_load_model_plain_and_windowed(tmp_path):
    """Plain models carry no window unless one is stored."""
    model = {"mu": 0.5, "g": {"edges": [0, 14], "values": [0.01]}, "k": {"edges": [1, 2], "values": [0.3]}}
    write_json(tmp_path / "plain.json", model)
    parsed, window, _ = load_model(tmp_path / "plain.json")
    assert parsed.mu == 0.5
    assert window is None
    write_json(tmp_path / "windowed.json", {**model, "window": {"start": "2005-02-01", "T": 28}})
    _, window, _ = load_model(tmp_path / "windowed.json")
    assert window.start == date(2005, 2, 1)


def test_load_model_rejects_bad_shape(tmp_path):
    """A value count that does not match the edges is a schema error."""
    write_json(tmp_path / "m.json", {"mu": 1, "g": {"edges": [0, 1, 2], "values": [0.1]}, "k": {"edges": [1, 2], "values": [0]}})
    with pytest.raises(ValidationError):
        load_model(tmp_path / "m.json")


def test_align_to_window(make_catalog):
    """Times shift to the model's origin; events past its end are refused."""
    catalog = make_catalog([0.0, 3.0], T=5.0, start=date(2005, 2, 11))
    aligned = align_to_window(catalog, WindowSchema(start=date(2005, 2, 1), T=20))
    assert aligned.times.tolist() == [10.0, 13.0]
    assert aligned.T == 20
    with pytest.raises(CatalogWindowError):
        align_to_window(catalog, WindowSchema(start=date(2005, 2, 1), T=12))


def test_load_mark_distribution(tmp_path):
    """String keys become integer marks; bad laws are rejected."""
    write_json(tmp_path / "marks.json", {"3": 0.25, "6": 0.75})
    assert load_mark_distribution(tmp_path / "marks.json") == {3: 0.25, 6: 0.75}
    write_json(tmp_path / "bad.json", {"3": 0.5, "6": 0.4})
    with pytest.raises(ValidationError):
        load_mark_distribution(tmp_path / "bad.json")
