"""Model-independent stochastic declustering: the EM fit."""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from hawkesmisd.catalog.events import EventCatalog, jitter
from hawkesmisd.exceptions import ConfigurationError, EmptyCatalogError, MarkBinError
from hawkesmisd.intensity.histogram import HistogramFunction
from hawkesmisd.intensity.model import HawkesModel, log_likelihood
from hawkesmisd.intensity.pairs import PairIndex, lagged_pairs
from hawkesmisd.misd.bins import check_time_edges, default_time_edges, quantile_mark_edges
from hawkesmisd.misd.inference import binomial_standard_errors, lag_bin_mass, mark_bin_mass
from hawkesmisd.misd.probabilities import ProbabilityMatrix, e_step, init_probabilities
from hawkesmisd.observability.logging import RunLogger
from hawkesmisd.observability.metrics import get_metrics_collector
from hawkesmisd.utils.config import Config
from hawkesmisd.utils.validators import as_edges

logger = logging.getLogger(__name__)
run_logger = RunLogger()


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None


@dataclass
class FitConfig:
    """Bins and stopping rule for :func:`fit`.

    ``time_edges=None`` uses 0, 14, 91, 182, 365 and a catch-all bin to T;
    ``mark_edges=None`` uses ``mark_quantiles`` empirical quantiles.
    """

    time_edges: Optional[Sequence[float]] = None
    mark_edges: Optional[Sequence[float]] = None
    mark_quantiles: int = 4
    epsilon: float = 1e-5
    max_iter: int = 500
    jitter_seed: Optional[int] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ConfigurationError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.time_edges is not None:
            self.time_edges = check_time_edges(self.time_edges).tolist()
        if self.mark_edges is not None:
            self.mark_edges = as_edges(self.mark_edges, "mark_edges").tolist()

    @classmethod
    def from_config(cls, config: Config, **overrides: Any) -> "FitConfig":
        """Fit settings from the tool config, with non-None overrides applied."""
        values = {
            "time_edges": config.time_edges,
            "mark_quantiles": config.mark_quantiles,
            "epsilon": config.epsilon,
            "max_iter": config.max_iter,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def resolve_time_edges(self, T: float) -> np.ndarray:
        if self.time_edges is None:
            return default_time_edges(T)
        return np.asarray(self.time_edges, dtype=float)

    def resolve_mark_edges(self, marks: np.ndarray) -> np.ndarray:
        if self.mark_edges is None:
            return quantile_mark_edges(marks, self.mark_quantiles)
        return np.asarray(self.mark_edges, dtype=float)


@dataclass
class FittedModel:
    """Result of an MISD fit; the model is the M-step of the final P."""

    model: HawkesModel
    P: ProbabilityMatrix
    iterations: int
    converged: bool
    se_g: np.ndarray
    se_k: np.ndarray
    eta_t: float
    catalog: EventCatalog
    epsilon: float
    max_delta: float
    log_likelihood: float
    truncated_mass: float
    trace: List[float] = field(default_factory=list)

    @property
    def mu(self) -> float:
        return self.model.mu

    @classmethod
    def from_model(
        cls,
        model: HawkesModel,
        catalog: EventCatalog,
        iterations: int = 0,
        converged: bool = True,
        epsilon: float = float("nan"),
    ) -> "FittedModel":
        """Wrap a stored model, recovering P by one E-step on ``catalog``."""
        P = e_step(model, catalog)
        eta_t = P.triggered_mass
        g_mass = lag_bin_mass(P, catalog, model.g.edges)
        try:
            k_mass, k_counts = mark_bin_mass(P, catalog, model.k.edges)
            errors = binomial_standard_errors(eta_t, g_mass, model.g.widths, k_mass, k_counts)
        except MarkBinError as exc:
            logger.warning(f"k standard errors unavailable for this catalog: {exc}")
            errors = binomial_standard_errors(
                eta_t, g_mass, model.g.widths, np.zeros(model.k.n_bins), np.ones(model.k.n_bins)
            )
            errors.se_k = np.full(model.k.n_bins, np.nan)
        return cls(
            model=model,
            P=P,
            iterations=iterations,
            converged=converged,
            se_g=errors.se_g,
            se_k=errors.se_k,
            eta_t=eta_t,
            catalog=catalog,
            epsilon=epsilon,
            max_delta=float("nan"),
            log_likelihood=log_likelihood(model, catalog),
            truncated_mass=max(eta_t - float(g_mass.sum()), 0.0),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Model JSON extended with uncertainty and convergence data."""
        data = self.model.to_dict()
        data.update(
            {
                "se_g": self.se_g.tolist(),
                "se_k": [_finite_or_none(v) for v in self.se_k],
                "eta_t": self.eta_t,
                "iterations": self.iterations,
                "converged": self.converged,
                "epsilon": _finite_or_none(self.epsilon),
                "max_delta": _finite_or_none(self.max_delta),
                "log_likelihood": _finite_or_none(self.log_likelihood),
                "truncated_mass": self.truncated_mass,
                "window": {"start": self.catalog.window_start.isoformat(), "T": self.catalog.T},
            }
        )
        return data


def m_step_background(P: ProbabilityMatrix, T: float) -> float:
    """Expected number of background events per day."""
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    return P.background_mass / T


def m_step_g(
    P: ProbabilityMatrix,
    catalog: EventCatalog,
    time_edges: Sequence[float],
    pairs: Optional[PairIndex] = None,
) -> HistogramFunction:
    """g_l = (triggered mass with lag in bin l) / (dt_l * eta_t).

    Pairs lagged past the last edge count toward eta_t but toward no bin.
    With no triggered mass at all, g is identically zero.

    Args:
        P: Current branching probabilities
        catalog: Events the probabilities refer to
        time_edges: Lag bin edges in days, starting at 0
        pairs: Precomputed lagged pairs; built from the last edge if omitted

    Returns:
        The triggering density as a histogram over ``time_edges``
    """
    edges = check_time_edges(time_edges)
    eta_t = P.triggered_mass
    if eta_t <= 0:
        run_logger.log_degenerate("no triggered probability mass; g set to zero")
        return HistogramFunction.zeros(edges)
    mass = lag_bin_mass(P, catalog, edges, pairs)
    return HistogramFunction(edges, mass / (np.diff(edges) * eta_t))


def m_step_k(P: ProbabilityMatrix, catalog: EventCatalog, mark_edges: Sequence[float]) -> HistogramFunction:
    """k_l = expected children of events whose mark is in bin l, per such event.

    Args:
        P: Current branching probabilities
        catalog: Events the probabilities refer to
        mark_edges: Mark bin edges; the last bin is open-ended

    Returns:
        Open-ended productivity histogram

    Raises:
        MarkBinError: If a mark bin holds no events
    """
    edges = as_edges(mark_edges, "mark_edges")
    mass, counts = mark_bin_mass(P, catalog, edges)
    return HistogramFunction(edges, mass / counts, open_ended=True)


def m_step(
    P: ProbabilityMatrix,
    catalog: EventCatalog,
    time_edges: np.ndarray,
    mark_edges: np.ndarray,
    pairs: Optional[PairIndex] = None,
) -> HawkesModel:
    """All three M-step updates."""
    return HawkesModel(
        mu=m_step_background(P, catalog.T),
        g=m_step_g(P, catalog, time_edges, pairs),
        k=m_step_k(P, catalog, mark_edges),
    )


def fit(catalog: EventCatalog, config: Optional[FitConfig] = None) -> FittedModel:
    """Alternate M- and E-steps from the uniform start until max |dP| < epsilon.

    Hitting ``max_iter`` is not an error: the result says ``converged=False``.

    Args:
        catalog: Events to decluster
        config: Bins and stopping rule; defaults to :class:`FitConfig`

    Returns:
        The fitted model with its final P, standard errors and convergence trace

    Raises:
        EmptyCatalogError: If the catalog has no events
        MarkBinError: If a mark bin holds no events
        FitDegeneracyError: If an event has zero intensity under the current model
    """
    config = config or FitConfig()
    if catalog.n == 0:
        raise EmptyCatalogError("cannot fit an empty catalog")
    if config.jitter_seed is not None:
        catalog = jitter(catalog, config.jitter_seed)

    time_edges = config.resolve_time_edges(catalog.T)
    mark_edges = config.resolve_mark_edges(catalog.marks)
    pairs = lagged_pairs(catalog.times, float(time_edges[-1]))
    logger.info(
        f"Fitting {catalog.n} events on T={catalog.T:g} days; "
        f"time edges {time_edges.tolist()}, mark edges {mark_edges.tolist()}"
    )

    started = time.perf_counter()
    P = init_probabilities(catalog.n)
    trace: List[float] = []
    converged = False

    for iteration in range(1, config.max_iter + 1):
        model = m_step(P, catalog, time_edges, mark_edges, pairs)
        updated = e_step(model, catalog, pairs)
        delta = updated.max_abs_diff(P)
        P = updated
        trace.append(delta)
        run_logger.log_iteration(iteration, delta, model.mu)
        if delta < config.epsilon:
            converged = True
            break

    # Re-estimate from the final P so (mu, g, k) and P are mutually consistent.
    model = m_step(P, catalog, time_edges, mark_edges, pairs)
    eta_t = P.triggered_mass
    g_mass = lag_bin_mass(P, catalog, time_edges, pairs)
    k_mass, k_counts = mark_bin_mass(P, catalog, mark_edges)
    errors = binomial_standard_errors(eta_t, g_mass, np.diff(time_edges), k_mass, k_counts)

    duration_ms = (time.perf_counter() - started) * 1000
    run_logger.log_fit(catalog.n, len(trace), converged, eta_t, duration_ms)
    metrics = get_metrics_collector()
    metrics.record_fit(len(trace), converged, duration_ms)
    metrics.set_gauge("fit_eta_t", eta_t)

    return FittedModel(
        model=model,
        P=P,
        iterations=len(trace),
        converged=converged,
        se_g=errors.se_g,
        se_k=errors.se_k,
        eta_t=eta_t,
        catalog=catalog,
        epsilon=config.epsilon,
        max_delta=trace[-1],
        log_likelihood=log_likelihood(model, catalog),
        truncated_mass=max(eta_t - float(g_mass.sum()), 0.0),
        trace=trace,
    )
