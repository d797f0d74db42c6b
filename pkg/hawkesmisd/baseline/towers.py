"""Exponential self-excitation contagion baseline.

Each event raises the expected daily count for the following days by
N_secondary times the probability that its contagion lands on that day,
the contagion duration being exponential with mean T_excite.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence, Union

import numpy as np

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.exceptions import ConfigurationError, DomainError
from hawkesmisd.intensity.model import intensity_on_grid
from hawkesmisd.io.schemas import BaselineConfigSchema
from hawkesmisd.misd.estimator import FittedModel
from hawkesmisd.misd.inference import DEFAULT_OFFSPRING_WINDOW_DAYS, offspring_stats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TowersModel:
    """Contagion duration, secondary events per event, and the baseline daily count."""

    t_excite: float
    n_secondary: float
    n0: Union[float, Sequence[float]] = 0.0

    def __post_init__(self):
        if not self.t_excite > 0:
            raise ConfigurationError(f"t_excite must be positive, got {self.t_excite}")
        if self.n_secondary < 0:
            raise ConfigurationError(f"n_secondary must be >= 0, got {self.n_secondary}")
        if isinstance(self.n0, (list, tuple, np.ndarray)):
            table = tuple(float(v) for v in self.n0)
            if not table or min(table) < 0:
                raise ConfigurationError("n0 table must be non-empty and non-negative")
            object.__setattr__(self, "n0", table)
        elif self.n0 < 0:
            raise ConfigurationError(f"n0 must be >= 0, got {self.n0}")

    def n0_at(self, t: float) -> float:
        """Baseline expected count on the day containing t."""
        if isinstance(self.n0, tuple):
            day = min(max(int(math.floor(t)), 0), len(self.n0) - 1)
            return self.n0[day]
        return float(self.n0)

    def to_dict(self) -> Dict[str, Any]:
        n0 = list(self.n0) if isinstance(self.n0, tuple) else self.n0
        return {"t_excite": self.t_excite, "n_secondary": self.n_secondary, "n0": n0}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TowersModel":
        schema = BaselineConfigSchema.model_validate(data)
        return cls(t_excite=schema.t_excite, n_secondary=schema.n_secondary, n0=schema.n0)


def towers_probability(delta_days: Union[int, np.ndarray], t_excite: float) -> Union[float, np.ndarray]:
    """Probability that contagion from day 0 lands on day ``delta_days``.

    The exponential density integrated over the day [delta - 1, delta]:
    exp(-(delta - 1)/t_excite) - exp(-delta/t_excite).

    Args:
        delta_days: Whole-day gap, or an array of gaps, each at least 1
        t_excite: Mean excitation time in days

    Returns:
        A float for a scalar gap, else an array of the same shape

    Raises:
        DomainError: If t_excite is not positive or a gap is not an integer >= 1
    """
    if not t_excite > 0:
        raise DomainError(f"t_excite must be positive, got {t_excite}")
    delta = np.asarray(delta_days)
    if np.any(delta < 1) or np.any(delta != np.floor(delta)):
        raise DomainError(f"day gap must be an integer >= 1, got {delta_days!r}")
    delta = delta.astype(float)
    # expm1 keeps full precision for the first day.
    value = np.exp(-(delta - 1.0) / t_excite) * -np.expm1(-1.0 / t_excite)
    return float(value) if value.ndim == 0 else value


def day_gaps(t_n: float, times: np.ndarray) -> np.ndarray:
    """Whole-day gaps ceil(t_n - t_i), at least 1, for events strictly before t_n."""
    earlier = times[times < t_n]
    return np.maximum(np.ceil(t_n - earlier), 1.0)


def towers_expected(t_n: float, catalog: EventCatalog, model: TowersModel) -> float:
    """Expected count at t_n: N0(t_n) + N_secondary * sum of day probabilities."""
    gaps = day_gaps(t_n, catalog.times)
    excitation = float(np.sum(towers_probability(gaps, model.t_excite))) if gaps.size else 0.0
    return model.n0_at(t_n) + model.n_secondary * excitation


def window_share(model: TowersModel, window_days: float = DEFAULT_OFFSPRING_WINDOW_DAYS) -> float:
    """Secondary events per event landing within the first floor(window_days) days."""
    if window_days <= 0:
        raise DomainError(f"window_days must be positive, got {window_days}")
    whole_days = int(math.floor(window_days))
    return model.n_secondary * -math.expm1(-whole_days / model.t_excite)


def expected_series(catalog: EventCatalog, model: TowersModel) -> np.ndarray:
    """Expected count for each window day d, from events strictly before day d."""
    days = np.arange(int(math.ceil(catalog.T)), dtype=float)
    return np.array([towers_expected(d, catalog, model) for d in days])


@dataclass
class ComparisonReport:
    """MISD contagion summary next to the exponential baseline."""

    window_days: float
    misd_mean_offspring: float
    misd_offspring_within_window: float
    towers_n_secondary: float
    towers_within_window: float
    days: List[int] = field(default_factory=list)
    misd_series: List[float] = field(default_factory=list)
    towers_series: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window_days": self.window_days,
            "misd_mean_offspring": self.misd_mean_offspring,
            "misd_offspring_within_window": self.misd_offspring_within_window,
            "towers_n_secondary": self.towers_n_secondary,
            "towers_within_window": self.towers_within_window,
        }

    def series_rows(self) -> List[Dict[str, Any]]:
        return [
            {"day": d, "misd_expected": m, "towers_expected": t}
            for d, m, t in zip(self.days, self.misd_series, self.towers_series)
        ]


def compare(
    fitted: FittedModel,
    model: TowersModel,
    catalog: EventCatalog,
    window_days: float = DEFAULT_OFFSPRING_WINDOW_DAYS,
) -> ComparisonReport:
    """Both models' contagion figures and their per-day expected counts.

    Args:
        fitted: MISD fit of ``catalog``
        model: Exponential baseline parameters
        catalog: Events both models are evaluated on
        window_days: Horizon for the within-window offspring figures

    Returns:
        Summary figures plus the two daily expected-count series
    """
    stats = offspring_stats(fitted, catalog, window_days)
    within = window_share(model, window_days)

    days = np.arange(int(math.ceil(catalog.T)), dtype=float)
    misd = intensity_on_grid(fitted.model, days, catalog)
    towers = expected_series(catalog, model)
    logger.info(
        f"{window_days:g}-day offspring: MISD {stats.mean_offspring_within_window:.4f}, "
        f"baseline N_secondary {model.n_secondary:.4f}"
    )
    return ComparisonReport(
        window_days=float(window_days),
        misd_mean_offspring=stats.mean_offspring,
        misd_offspring_within_window=stats.mean_offspring_within_window,
        towers_n_secondary=model.n_secondary,
        towers_within_window=within,
        days=[int(d) for d in days],
        misd_series=misd.tolist(),
        towers_series=towers.tolist(),
    )


def mean_window_offspring(reports: Sequence[ComparisonReport]) -> float:
    """Mean of the MISD within-window offspring across several catalogs."""
    if not reports:
        raise ValueError("need at least one comparison report")
    return float(np.mean([r.misd_offspring_within_window for r in reports]))
