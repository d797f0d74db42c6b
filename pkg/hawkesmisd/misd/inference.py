"""Standard errors and offspring statistics of a converged MISD fit."""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Dict, Optional, Tuple

import numpy as np

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.intensity.pairs import PairIndex, lagged_pairs
from hawkesmisd.misd.bins import assign_lag_bins, assign_mark_bins
from hawkesmisd.misd.probabilities import ProbabilityMatrix

if TYPE_CHECKING:
    from hawkesmisd.misd.estimator import FittedModel

logger = logging.getLogger(__name__)

DEFAULT_OFFSPRING_WINDOW_DAYS = 13.0


@dataclass
class StandardErrors:
    """Per-bin standard errors of g and k."""

    se_g: np.ndarray
    se_k: np.ndarray
    degenerate: bool = False


@dataclass
class OffspringStats:
    """Per-event offspring accounting of the probability matrix."""

    mean_offspring: float
    mean_offspring_within_window: float
    diagonal_mass_fraction: float
    background_rate: float
    window_days: float
    n: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mean_offspring": self.mean_offspring,
            "mean_offspring_within_window": self.mean_offspring_within_window,
            "diagonal_mass_fraction": self.diagonal_mass_fraction,
            "background_rate": self.background_rate,
            "window_days": self.window_days,
            "n": self.n,
        }


def lag_bin_mass(
    P: ProbabilityMatrix,
    catalog: EventCatalog,
    time_edges: np.ndarray,
    pairs: Optional[PairIndex] = None,
) -> np.ndarray:
    """Triggered probability falling in each g bin; lags past the last edge are left out."""
    if pairs is None:
        pairs = lagged_pairs(catalog.times, float(time_edges[-1]))
    bins = assign_lag_bins(pairs.lags, time_edges)
    keep = bins >= 0
    return np.bincount(bins[keep], weights=P.pair_mass(pairs)[keep], minlength=time_edges.size - 1)


def mark_bin_mass(
    P: ProbabilityMatrix, catalog: EventCatalog, mark_edges: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Parent probability mass and event count per k bin."""
    bins, counts = assign_mark_bins(catalog.marks, mark_edges)
    mass = np.bincount(bins, weights=P.parent_mass(), minlength=mark_edges.size - 1)
    return mass, counts


def binomial_standard_errors(
    eta_t: float,
    g_mass: np.ndarray,
    time_widths: np.ndarray,
    k_mass: np.ndarray,
    k_counts: np.ndarray,
) -> StandardErrors:
    """SEs from the binomial offspring-count model.

    Var(g_l) = theta(1 - theta) / (eta dt_l^2), theta = bin mass / eta;
    Var(k_l) = eta theta(1 - theta) / n_l^2, theta = parent mass / eta.
    """
    if eta_t <= 0:
        logger.warning("No triggered mass; standard errors reported as 0")
        return StandardErrors(np.zeros(g_mass.size), np.zeros(k_mass.size), degenerate=True)

    theta_g = np.clip(g_mass / eta_t, 0.0, 1.0)
    var_g = theta_g * (1.0 - theta_g) / (eta_t * time_widths**2)

    theta_k = np.clip(k_mass / eta_t, 0.0, 1.0)
    var_k = eta_t * theta_k * (1.0 - theta_k) / k_counts.astype(float) ** 2

    return StandardErrors(se_g=np.sqrt(var_g), se_k=np.sqrt(var_k))


def standard_errors(fitted: "FittedModel", catalog: EventCatalog) -> StandardErrors:
    """Standard errors of every g and k bin of a fit."""
    P = fitted.P
    time_edges = fitted.model.g.edges
    mark_edges = fitted.model.k.edges
    k_mass, k_counts = mark_bin_mass(P, catalog, mark_edges)
    return binomial_standard_errors(
        P.triggered_mass,
        lag_bin_mass(P, catalog, time_edges),
        np.diff(time_edges),
        k_mass,
        k_counts,
    )


def offspring_stats(
    fitted: "FittedModel",
    catalog: EventCatalog,
    window_days: float = DEFAULT_OFFSPRING_WINDOW_DAYS,
) -> OffspringStats:
    """Mean offspring per event, overall and within ``window_days`` (inclusive)."""
    if window_days <= 0:
        raise ValueError(f"window_days must be positive, got {window_days}")

    P = fitted.P
    n = catalog.n
    if n == 0:
        return OffspringStats(0.0, 0.0, 0.0, 0.0, window_days, 0)

    pairs = lagged_pairs(catalog.times, np.nextafter(window_days, np.inf))
    within = float(np.sum(P.pair_mass(pairs)))
    background = P.background_mass

    return OffspringStats(
        mean_offspring=P.triggered_mass / n,
        mean_offspring_within_window=within / n,
        diagonal_mass_fraction=background / n,
        background_rate=background / catalog.T,
        window_days=float(window_days),
        n=n,
    )
