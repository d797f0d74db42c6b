"""Kolmogorov-Smirnov uniformity checks of residual processes."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy import stats

from hawkesmisd.catalog.events import EventCatalog, monthly_histogram
from hawkesmisd.diagnostics.superthin import ModelLike, ResidualProcess, superthin
from hawkesmisd.exceptions import EmptyResidualError

logger = logging.getLogger(__name__)


@dataclass
class UniformityResult:
    ks_statistic: float
    ks_p_value: float
    n: int
    histogram: List[Tuple[str, int]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"ks": self.ks_statistic, "p": self.ks_p_value, "n": self.n}


def ks_uniform(times: np.ndarray, T: float) -> Tuple[float, float]:
    """One-sample KS statistic against Uniform[0, T] and its asymptotic p-value."""
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise EmptyResidualError("KS test needs at least one residual point")
    statistic = float(stats.kstest(times, "uniform", args=(0.0, T)).statistic)
    p_value = float(stats.kstwobign.sf(statistic * math.sqrt(times.size)))
    return statistic, p_value


def residual_histogram(residual: ResidualProcess) -> List[Tuple[str, int]]:
    """Residual points per calendar month; zeros when the residual is empty."""
    return monthly_histogram(residual.residual_times, residual.window_start, residual.T)


def uniformity_tests(residual: ResidualProcess) -> UniformityResult:
    """KS test of the residual times and their monthly histogram."""
    points = residual.residual_times
    statistic, p_value = ks_uniform(points, residual.T)
    return UniformityResult(statistic, p_value, int(points.size), residual_histogram(residual))


@dataclass
class CalibrationSummary:
    """KS rejection rate of super-thinned residuals across seeds."""

    runs: int
    rejections: int
    alpha: float
    b: float
    empty_runs: int
    partition_ok: bool
    p_values: List[float] = field(default_factory=list)

    @property
    def rejection_rate(self) -> float:
        tested = self.runs - self.empty_runs
        return self.rejections / tested if tested else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "runs": self.runs,
            "rejections": self.rejections,
            "rejection_rate": self.rejection_rate,
            "alpha": self.alpha,
            "b": self.b,
            "empty_runs": self.empty_runs,
            "partition_ok": self.partition_ok,
        }


def calibration_run(
    fitted: ModelLike,
    catalog: EventCatalog,
    b: float,
    seeds: Iterable[int],
    alpha: float = 0.05,
    log_every: Optional[int] = None,
) -> CalibrationSummary:
    """Super-thin once per seed and count KS rejections at level ``alpha``."""
    runs = rejections = empty = 0
    partition_ok = True
    p_values = []
    for seed in seeds:
        residual = superthin(fitted, catalog, b, seed)
        runs += 1
        partition_ok &= residual.retained.size + residual.thinned.size == catalog.n
        if residual.residual_times.size == 0:
            empty += 1
            continue
        _, p_value = ks_uniform(residual.residual_times, residual.T)
        p_values.append(p_value)
        rejections += int(p_value < alpha)
        if log_every and runs % log_every == 0:
            logger.info(f"Calibration: {runs} runs, {rejections} rejections so far")
    return CalibrationSummary(runs, rejections, alpha, float(b), empty, bool(partition_ok), p_values)
