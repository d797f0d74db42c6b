"""Exponential contagion baseline for comparison with MISD fits."""

from hawkesmisd.baseline.towers import (
    ComparisonReport,
    TowersModel,
    compare,
    day_gaps,
    expected_series,
    mean_window_offspring,
    towers_expected,
    towers_probability,
    window_share,
)

__all__ = [
    "ComparisonReport",
    "TowersModel",
    "compare",
    "day_gaps",
    "expected_series",
    "mean_window_offspring",
    "towers_expected",
    "towers_probability",
    "window_share",
]
