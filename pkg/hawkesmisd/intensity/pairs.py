"""Enumeration of (child, parent) event pairs within a lag horizon."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PairIndex:
    """All pairs j < i (catalog order) with lag t_i - t_j below ``max_lag``.

    Pairs are stored row-major (by child, then parent) so reductions over
    them run in a fixed order.
    """

    rows: np.ndarray
    cols: np.ndarray
    lags: np.ndarray
    n: int
    max_lag: float

    @property
    def size(self) -> int:
        return int(self.rows.size)


def lagged_pairs(times: np.ndarray, max_lag: float = np.inf) -> PairIndex:
    """Pairs of sorted ``times`` with j < i and t_i - t_j < max_lag."""
    times = np.asarray(times, dtype=float)
    n = times.size
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return PairIndex(empty, empty, np.zeros(0), 0, float(max_lag))

    lo = np.searchsorted(times, times - max_lag, side="right")
    counts = np.arange(n) - lo
    total = int(counts.sum())
    rows = np.repeat(np.arange(n, dtype=np.int64), counts)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    cols = np.repeat(lo, counts) + (np.arange(total) - starts)
    lags = times[rows] - times[cols]
    return PairIndex(rows=rows, cols=cols.astype(np.int64), lags=lags, n=n, max_lag=float(max_lag))
