"""Bin edge selection and bin assignment for the histogram estimators."""

import logging
from typing import Sequence, Tuple

import numpy as np

from hawkesmisd.exceptions import ConfigurationError, EdgeError, MarkBinError
from hawkesmisd.utils.validators import as_edges

logger = logging.getLogger(__name__)

# Two weeks, three months, six months, one year.
DEFAULT_TIME_BREAKS = (0.0, 14.0, 91.0, 182.0, 365.0)


def default_time_edges(T: float) -> np.ndarray:
    """Default g edges with a final catch-all bin ending at T."""
    inner = [e for e in DEFAULT_TIME_BREAKS if e < T]
    return np.array(inner + [float(T)])


def check_time_edges(edges: Sequence[float]) -> np.ndarray:
    edges = as_edges(edges, "time_edges")
    if edges[0] != 0:
        raise EdgeError(f"time_edges must start at 0, got {edges[0]}")
    return edges


def quantile_mark_edges(marks: Sequence[int], q: int = 4) -> np.ndarray:
    """Mark edges at empirical quantiles, snapped to integers.

    Duplicate edges are merged and any bin left empty is merged into its
    neighbour, so every bin holds at least one event. The last edge is one
    past the largest mark.
    """
    marks = np.asarray(marks, dtype=np.int64)
    if marks.size == 0:
        raise ConfigurationError("cannot choose mark edges for an empty catalog")
    if q < 1:
        raise ConfigurationError(f"mark quantile count must be >= 1, got {q}")

    lo, hi = int(marks.min()), int(marks.max())
    inner = np.ceil(np.quantile(marks, np.linspace(0.0, 1.0, q + 1)[1:-1]))
    edges = np.unique(np.concatenate(([lo], inner, [hi + 1]))).astype(float)
    edges = edges[(edges >= lo) & (edges <= hi + 1)]

    while True:
        counts, _ = np.histogram(marks, bins=edges)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            break
        b = int(empty[0])
        # Drop the edge shared with a neighbour; the outer edges stay.
        drop = b if b > 0 else b + 1
        edges = np.delete(edges, drop)

    logger.debug(f"Mark edges from {q} quantiles: {edges.tolist()}")
    return edges


def assign_lag_bins(lags: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Bin of each lag in right-open bins; -1 outside [e_0, e_L)."""
    idx = np.searchsorted(edges, lags, side="right") - 1
    return np.where(idx >= edges.size - 1, -1, idx)


def assign_mark_bins(marks: np.ndarray, edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Mark bin of each event and the event count per bin.

    Marks at or above the last edge fall in the last bin. Raises
    :class:`MarkBinError` for marks below the first edge or empty bins.
    """
    marks = np.asarray(marks, dtype=float)
    n_bins = edges.size - 1
    idx = np.searchsorted(edges, marks, side="right") - 1
    below = np.flatnonzero(idx < 0)
    if below.size:
        raise MarkBinError(0, f"mark {marks[below[0]]:g} lies below the first mark edge {edges[0]:g}")
    idx = np.minimum(idx, n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        b = int(empty[0])
        raise MarkBinError(
            b, f"mark bin {b} [{edges[b]:g}, {edges[b + 1]:g}) holds no events; choose edges so every bin is populated"
        )
    return idx, counts
