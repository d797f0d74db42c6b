"""Monthly expected-count reports and plot-ready triggering tables."""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from hawkesmisd.catalog.events import EventCatalog, month_spans
from hawkesmisd.diagnostics.superthin import ModelLike, model_of
from hawkesmisd.intensity.histogram import HistogramFunction
from hawkesmisd.intensity.model import intensity_at_events
from hawkesmisd.misd.estimator import FittedModel


@dataclass(frozen=True)
class MonthlyExpectation:
    month: str
    observed: int
    expected: float
    days: float


def monthly_expected(fitted: ModelLike, catalog: EventCatalog) -> List[MonthlyExpectation]:
    """Observed count per month against median lambda at that month's events times its days.

    A month without events falls back to mu times its days. Months at the
    window edges count only their days inside the window.
    """
    model = model_of(fitted)
    spans = month_spans(catalog.window_start, catalog.T)
    starts = np.array([s.start for s in spans])
    lam = intensity_at_events(model, catalog)
    month_idx = np.clip(np.searchsorted(starts, catalog.times, side="right") - 1, 0, len(spans) - 1)

    rows = []
    for i, span in enumerate(spans):
        in_month = lam[month_idx == i]
        rate = float(np.median(in_month)) if in_month.size else model.mu
        rows.append(MonthlyExpectation(span.label, int(in_month.size), rate * span.days, span.days))
    return rows


def _histogram_rows(f: HistogramFunction, se: np.ndarray) -> List[Dict[str, Any]]:
    rows = []
    last = f.n_bins - 1
    for i, (lo, hi, value, err) in enumerate(zip(f.edges[:-1], f.edges[1:], f.values, se)):
        rows.append(
            {
                "bin_start": float(lo),
                "bin_end": float(hi),
                "open_ended": bool(f.open_ended and i == last),
                "value": float(value),
                "se": float(err),
                "lower": max(float(value - 2 * err), 0.0),
                "upper": float(value + 2 * err),
            }
        )
    return rows


def triggering_plot_table(fitted: FittedModel) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    """Rows for plotting g and k with +/- 2 SE bands truncated at zero."""
    return (
        _histogram_rows(fitted.model.g, fitted.se_g),
        _histogram_rows(fitted.model.k, fitted.se_k),
    )
