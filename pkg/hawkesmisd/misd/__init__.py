"""MISD expectation-maximization fitting of histogram Hawkes models."""

from hawkesmisd.misd.bins import default_time_edges, quantile_mark_edges
from hawkesmisd.misd.estimator import (
    FitConfig,
    FittedModel,
    fit,
    m_step,
    m_step_background,
    m_step_g,
    m_step_k,
)
from hawkesmisd.misd.inference import OffspringStats, StandardErrors, offspring_stats, standard_errors
from hawkesmisd.misd.probabilities import ProbabilityMatrix, e_step, init_probabilities

__all__ = [
    "FitConfig",
    "FittedModel",
    "OffspringStats",
    "ProbabilityMatrix",
    "StandardErrors",
    "default_time_edges",
    "e_step",
    "fit",
    "init_probabilities",
    "m_step",
    "m_step_background",
    "m_step_g",
    "m_step_k",
    "offspring_stats",
    "quantile_mark_edges",
    "standard_errors",
]
