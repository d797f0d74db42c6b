"""Super-thinning residuals: thin where the fitted intensity is high,
superpose simulated points where it is low.
"""

import logging
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.exceptions import ConfigurationError, EmptyCatalogError
from hawkesmisd.intensity.model import HawkesModel, intensity_at_events, intensity_on_grid
from hawkesmisd.misd.estimator import FittedModel
from hawkesmisd.observability.metrics import get_metrics_collector
from hawkesmisd.simulate.poisson import homogeneous_by_height

logger = logging.getLogger(__name__)

ModelLike = Union[FittedModel, HawkesModel]


class ResidualLabel(str, Enum):
    """Provenance of a point in a super-thinned process."""

    RETAINED = "retained"
    THINNED = "thinned"
    SIMULATED = "simulated"


@dataclass(frozen=True)
class ResidualProcess:
    """All points touched by super-thinning, in time order, with labels.

    Retained and thinned points partition the observed catalog; the residual
    process is retained plus simulated.
    """

    times: np.ndarray
    labels: Tuple[ResidualLabel, ...]
    b: float
    T: float
    window_start: date

    def _select(self, *wanted: ResidualLabel) -> np.ndarray:
        mask = np.array([label in wanted for label in self.labels], dtype=bool)
        return self.times[mask] if mask.size else np.zeros(0)

    @property
    def retained(self) -> np.ndarray:
        return self._select(ResidualLabel.RETAINED)

    @property
    def thinned(self) -> np.ndarray:
        return self._select(ResidualLabel.THINNED)

    @property
    def simulated(self) -> np.ndarray:
        return self._select(ResidualLabel.SIMULATED)

    @property
    def residual_times(self) -> np.ndarray:
        return self._select(ResidualLabel.RETAINED, ResidualLabel.SIMULATED)

    def rows(self) -> List[Tuple[float, str]]:
        return [(float(t), label.value) for t, label in zip(self.times, self.labels)]


def model_of(fitted: ModelLike) -> HawkesModel:
    return fitted.model if isinstance(fitted, FittedModel) else fitted


def parse_b_mode(mode: str) -> Tuple[str, Optional[float]]:
    """``median``, ``min``, ``max`` or ``fixed:<rate>``."""
    text = mode.strip().lower()
    if text in ("median", "min", "max"):
        return text, None
    if text.startswith("fixed:"):
        try:
            value = float(text.split(":", 1)[1])
        except ValueError:
            raise ConfigurationError(f"invalid fixed b value in {mode!r}") from None
        if not value > 0:
            raise ConfigurationError(f"b must be positive, got {value}")
        return "fixed", value
    raise ConfigurationError(f"unknown b mode {mode!r}; use median, min, max or fixed:<rate>")


def choose_b(fitted: ModelLike, catalog: EventCatalog, mode: str = "median") -> float:
    """Thinning rate: a summary of the fitted intensity at the observed events, or a fixed value.

    ``min`` and ``max`` give the pure-thinning and pure-superposition variants.

    Args:
        fitted: Fitted or plain model
        catalog: Observed events
        mode: ``median``, ``min``, ``max`` or ``fixed:<rate>``

    Returns:
        The rate b in events per day

    Raises:
        ConfigurationError: If ``mode`` is not recognized
        EmptyCatalogError: If a data-driven mode is given no events
    """
    kind, value = parse_b_mode(mode)
    if kind == "fixed":
        return float(value)
    if catalog.n == 0:
        raise EmptyCatalogError(f"b mode {kind!r} needs at least one event")
    lam = intensity_at_events(model_of(fitted), catalog)
    reducer = {"median": np.median, "min": np.min, "max": np.max}[kind]
    return float(reducer(lam))


def superthin(fitted: ModelLike, catalog: EventCatalog, b: float, seed: int) -> ResidualProcess:
    """Super-thin ``catalog`` against the fitted intensity at rate b.

    Observed point i is kept with probability min(b / lambda(t_i), 1), its
    uniform drawn in catalog order. Candidates of a rate-b process are kept
    with probability max(b - lambda(u), 0) / b, lambda evaluated on the
    observed catalog. Thinning, candidate times and candidate heights use
    independent streams spawned from ``seed``, so raising b with the same
    seed never thins a retained point and never drops a superposed one.

    Args:
        fitted: Fitted or plain model
        catalog: Observed events, on the model's time origin
        b: Target rate of the residual process
        seed: Seed for the three spawned streams

    Returns:
        Every retained, thinned and simulated point in time order
    """
    if not b > 0:
        raise ConfigurationError(f"b must be positive, got {b}")
    model = model_of(fitted)
    thin_rng, time_rng, height_rng = (
        np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(3)
    )

    lam = intensity_at_events(model, catalog)
    uniforms = thin_rng.random(catalog.n)
    with np.errstate(divide="ignore"):
        keep_prob = np.where(lam > 0, np.minimum(b / lam, 1.0), 1.0)
    retained = uniforms < keep_prob

    cand_t, cand_h = homogeneous_by_height(b, catalog.T, time_rng, height_rng)
    cand_lam = intensity_on_grid(model, cand_t, catalog)
    superposed = cand_t[cand_h < np.maximum(b - cand_lam, 0.0)]

    times = np.concatenate((catalog.times, superposed))
    labels = [ResidualLabel.RETAINED if r else ResidualLabel.THINNED for r in retained]
    labels += [ResidualLabel.SIMULATED] * superposed.size
    order = np.argsort(times, kind="stable")

    get_metrics_collector().set_gauge("superthin_b", float(b))
    logger.info(
        f"Super-thinning at b={b:.6g}: {int(retained.sum())} retained, "
        f"{int((~retained).sum())} thinned, {superposed.size} simulated"
    )
    return ResidualProcess(
        times=times[order],
        labels=tuple(labels[i] for i in order),
        b=float(b),
        T=catalog.T,
        window_start=catalog.window_start,
    )
