"""hawkesmisd - nonparametric Hawkes process fitting by stochastic declustering."""

__version__ = "0.1.0"

from hawkesmisd.catalog import EventCatalog, ingest, summarize
from hawkesmisd.intensity import HawkesModel, HistogramFunction
from hawkesmisd.misd import FitConfig, FittedModel, fit
from hawkesmisd.utils.config import Config

__all__ = [
    "Config",
    "EventCatalog",
    "FitConfig",
    "FittedModel",
    "HawkesModel",
    "HistogramFunction",
    "__version__",
    "fit",
    "ingest",
    "summarize",
]
