"""Super-thinning residual analysis and reporting products."""

from hawkesmisd.diagnostics.reports import MonthlyExpectation, monthly_expected, triggering_plot_table
from hawkesmisd.diagnostics.superthin import (
    ResidualLabel,
    ResidualProcess,
    choose_b,
    parse_b_mode,
    superthin,
)
from hawkesmisd.diagnostics.uniformity import (
    CalibrationSummary,
    UniformityResult,
    calibration_run,
    ks_uniform,
    residual_histogram,
    uniformity_tests,
)

__all__ = [
    "CalibrationSummary",
    "MonthlyExpectation",
    "ResidualLabel",
    "ResidualProcess",
    "UniformityResult",
    "calibration_run",
    "choose_b",
    "ks_uniform",
    "monthly_expected",
    "parse_b_mode",
    "residual_histogram",
    "superthin",
    "triggering_plot_table",
    "uniformity_tests",
]
