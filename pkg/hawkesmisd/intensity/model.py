"""Marked-temporal Hawkes model and its conditional intensity."""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, Mapping, Optional, Sequence, Union

import numpy as np

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.exceptions import ConfigurationError, EdgeError
from hawkesmisd.intensity.histogram import HistogramFunction
from hawkesmisd.intensity.pairs import lagged_pairs
from hawkesmisd.io.schemas import HawkesModelSchema

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-8
_GRID_CHUNK = 1024


@dataclass(frozen=True)
class HawkesModel:
    """lambda(t) = mu + sum over earlier events of g(t - t_i) * k(m_i).

    ``g`` is a density over elapsed days starting at 0. Fitted models may carry
    less than unit mass in g (truncated lags, or no triggering at all); use
    :meth:`require_normalized` where a proper density is needed.
    """

    mu: float
    g: HistogramFunction
    k: HistogramFunction

    def __post_init__(self):
        if not np.isfinite(self.mu) or self.mu < 0:
            raise ConfigurationError(f"background rate must be finite and >= 0, got {self.mu}")
        if self.g.edges[0] != 0:
            raise EdgeError(f"g edges must start at 0, got {self.g.edges[0]}")
        if self.g.open_ended:
            raise EdgeError("g must have bounded support")
        if not self.k.open_ended:
            object.__setattr__(self, "k", replace(self.k, open_ended=True))
        if self.g.integral() > 1 + NORMALIZATION_TOL:
            raise ConfigurationError(f"g integrates to {self.g.integral():.10g} > 1")
        object.__setattr__(self, "mu", float(self.mu))

    @property
    def is_normalized(self) -> bool:
        return abs(self.g.integral() - 1.0) <= NORMALIZATION_TOL

    def require_normalized(self) -> None:
        if not self.is_normalized:
            raise ConfigurationError(f"g must integrate to 1, got {self.g.integral():.10g}")

    def productivity(self, marks: Union[int, Sequence[int], np.ndarray]) -> np.ndarray:
        return self.k(marks)

    def branching_ratio(self, mark_distribution: Mapping[int, float]) -> float:
        """Expected direct offspring per event: sum over m of P(m) k(m)."""
        marks = np.array(list(mark_distribution.keys()), dtype=float)
        probs = np.array(list(mark_distribution.values()), dtype=float)
        return float(np.sum(probs * self.k(marks)))

    def to_dict(self) -> Dict[str, Any]:
        return {"mu": self.mu, "g": self.g.to_dict(), "k": self.k.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "HawkesModel":
        schema = HawkesModelSchema.model_validate(data)
        return cls(
            mu=schema.mu,
            g=HistogramFunction(schema.g.edges, schema.g.values),
            k=HistogramFunction(schema.k.edges, schema.k.values, open_ended=True),
        )


def conditional_intensity(model: HawkesModel, t: float, history: EventCatalog) -> float:
    """Rate at time t given events strictly before t."""
    times = history.times
    earlier = times < t
    lags = t - times[earlier]
    return float(model.mu + np.sum(model.g(lags) * model.k(history.marks[earlier])))


def intensity_on_grid(model: HawkesModel, ts: Sequence[float], history: EventCatalog) -> np.ndarray:
    """:func:`conditional_intensity` at many times, vectorized in chunks."""
    ts = np.asarray(ts, dtype=float)
    out = np.full(ts.shape, model.mu)
    if history.n == 0 or ts.size == 0:
        return out
    weights = model.k(history.marks)
    for start in range(0, ts.size, _GRID_CHUNK):
        chunk = ts[start:start + _GRID_CHUNK]
        lags = chunk[:, None] - history.times[None, :]
        contrib = np.where(lags > 0, model.g(lags) * weights[None, :], 0.0)
        out[start:start + _GRID_CHUNK] += contrib.sum(axis=1)
    return out


def intensity_at_events(model: HawkesModel, catalog: EventCatalog) -> np.ndarray:
    """lambda(t_i) from events j < i in catalog order (same-time ties count as earlier)."""
    pairs = lagged_pairs(catalog.times, model.g.support_end)
    contrib = model.g(pairs.lags) * model.k(catalog.marks[pairs.cols])
    return model.mu + np.bincount(pairs.rows, weights=contrib, minlength=catalog.n)


def compensator(model: HawkesModel, catalog: EventCatalog, t: Optional[float] = None) -> float:
    """Integrated intensity over [0, t] (t defaults to the window end T)."""
    t = catalog.T if t is None else float(t)
    earlier = catalog.times < t
    lags = t - catalog.times[earlier]
    return float(model.mu * t + np.sum(model.k(catalog.marks[earlier]) * model.g.cdf(lags)))


def log_likelihood(model: HawkesModel, catalog: EventCatalog) -> float:
    """Point-process log-likelihood on [0, T]; -inf when any lambda(t_i) is 0."""
    lam = intensity_at_events(model, catalog)
    if np.any(lam <= 0):
        return float("-inf")
    return float(np.sum(np.log(lam)) - compensator(model, catalog))
