"""Histogram triggering functions and the conditional intensity."""

from hawkesmisd.intensity.histogram import HistogramFunction, eval_step
from hawkesmisd.intensity.model import (
    HawkesModel,
    compensator,
    conditional_intensity,
    intensity_at_events,
    intensity_on_grid,
    log_likelihood,
)
from hawkesmisd.intensity.pairs import PairIndex, lagged_pairs

__all__ = [
    "HistogramFunction",
    "HawkesModel",
    "PairIndex",
    "compensator",
    "conditional_intensity",
    "eval_step",
    "intensity_at_events",
    "intensity_on_grid",
    "lagged_pairs",
    "log_likelihood",
]
