"""Readers and writers for the tool's CSV and JSON products."""

import io
import json
import logging
from datetime import date
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import pandas as pd

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.catalog.ingest import (
    ISO_DATE_FORMAT,
    NORMALIZED_DATE_COLUMN,
    SchemaMapping,
    ingest,
    normalized_mapping,
)
from hawkesmisd.exceptions import CatalogError, CatalogWindowError
from hawkesmisd.intensity.model import HawkesModel
from hawkesmisd.io.schemas import FittedModelSchema, MarkDistributionSchema, WindowSchema

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SUMMARY_FILE = "summary.json"


def canonical_json(data: Any) -> str:
    """Stable JSON text: fixed indentation, trailing newline."""
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def write_json(path: PathLike, data: Any) -> Path:
    path = Path(path)
    path.write_text(canonical_json(data), encoding="utf-8")
    return path


def read_json(path: PathLike) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_csv(path: PathLike, rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> Path:
    """Write rows with a fixed column order (header written even when empty)."""
    path = Path(path)
    frame = pd.DataFrame(list(rows), columns=list(columns))
    path.write_text(frame.to_csv(index=False, lineterminator="\n"), encoding="utf-8")
    return path


def _infer_window(csv_bytes: bytes) -> Tuple[date, date]:
    frame = pd.read_csv(io.BytesIO(csv_bytes), dtype=str, keep_default_na=False)
    if NORMALIZED_DATE_COLUMN not in frame.columns:
        raise CatalogError(f"normalized catalog needs a '{NORMALIZED_DATE_COLUMN}' column")
    dates = pd.to_datetime(frame[NORMALIZED_DATE_COLUMN].str.strip(), format=ISO_DATE_FORMAT, errors="coerce")
    dates = dates.dropna()
    if dates.empty:
        raise CatalogError("cannot infer the window of an empty catalog; pass --window-start and --window-end")
    return dates.min().date(), dates.max().date()


def ingest_file(
    path: PathLike,
    mapping: SchemaMapping,
    jitter_seed: Optional[int] = None,
    csv_bytes: Optional[bytes] = None,
) -> EventCatalog:
    """Ingest a CSV file.

    Catalog errors keep their type and row details; the message gains the path.
    """
    path = Path(path)
    if csv_bytes is None:
        csv_bytes = path.read_bytes()
    try:
        return ingest(csv_bytes, mapping, jitter_seed=jitter_seed)
    except CatalogError as exc:
        exc.args = (f"{path}: {exc}",)
        raise


def load_catalog(
    path: PathLike,
    window_start: Optional[date] = None,
    window_end: Optional[date] = None,
    jitter_seed: Optional[int] = None,
) -> EventCatalog:
    """Read a normalized ``date,victims`` catalog.

    The window comes from the arguments, else from ``summary.json`` beside the
    CSV, else from the first and last event dates.
    """
    path = Path(path)
    csv_bytes = path.read_bytes()

    summary_path = path.parent / SUMMARY_FILE
    if (window_start is None or window_end is None) and summary_path.exists():
        summary = read_json(summary_path)
        window_start = window_start or date.fromisoformat(summary["window_start"])
        window_end = window_end or date.fromisoformat(summary["window_end"])
        logger.debug(f"Window {window_start}..{window_end} taken from {summary_path}")

    if window_start is None or window_end is None:
        first, last = _infer_window(csv_bytes)
        window_start = window_start or first
        window_end = window_end or last
        logger.info(f"Window {window_start}..{window_end} inferred from event dates")

    mapping = normalized_mapping(window_start, window_end)
    return ingest_file(path, mapping, jitter_seed=jitter_seed, csv_bytes=csv_bytes)


def load_model(path: PathLike) -> Tuple[HawkesModel, Optional[WindowSchema], Dict[str, Any]]:
    """A plain or fitted model JSON: the model, its fit window if stored, and the raw data."""
    data = read_json(path)
    model = HawkesModel.from_dict(data)
    window = None
    if "se_g" in data:
        window = FittedModelSchema.model_validate(data).window
    elif data.get("window") is not None:
        window = WindowSchema.model_validate(data["window"])
    return model, window, data


def align_to_window(catalog: EventCatalog, window: Optional[WindowSchema]) -> EventCatalog:
    """Re-express a catalog on a model's fit window, refusing events outside it."""
    if window is None:
        return catalog
    offset = (catalog.window_start - window.start).days
    times = catalog.times + offset
    if catalog.n and (times.min() < 0 or times.max() > window.T):
        raise CatalogWindowError(
            f"catalog events fall outside the model window starting {window.start} of {window.T:g} days"
        )
    return EventCatalog.from_arrays(
        times,
        catalog.marks,
        window.start,
        window.T,
        source_rows=[e.source_row for e in catalog.events],
        definition_note=catalog.definition_note,
        dropped=catalog.dropped,
        mark_threshold=catalog.mark_threshold,
    )


def load_mark_distribution(path: PathLike) -> Dict[int, float]:
    """``{"3": 0.5, "6": 0.5}`` as a validated mark law."""
    return MarkDistributionSchema(probabilities=read_json(path)).probabilities
