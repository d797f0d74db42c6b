"""Shared fixtures for hawkesmisd tests."""

from datetime import date

import numpy as np
import pytest

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.intensity.histogram import HistogramFunction
from hawkesmisd.intensity.model import HawkesModel
from hawkesmisd.observability.metrics import get_metrics_collector

WINDOW_START = date(2005, 2, 1)


@pytest.fixture(autouse=True)
def reset_metrics():
    """Each test starts from empty global metrics."""
    get_metrics_collector().reset()
    yield
    get_metrics_collector().reset()


@pytest.fixture
def make_catalog():
    """Factory for catalogs from plain lists; marks default to 1."""

    def _make(times, marks=None, T=None, start=WINDOW_START):
        times = np.asarray(times, dtype=float)
        if marks is None:
            marks = np.ones(times.size, dtype=int)
        if T is None:
            T = float(times.max()) + 1.0 if times.size else 10.0
        return EventCatalog.from_arrays(times, marks, start, T)

    return _make


@pytest.fixture
def make_model():
    """Factory for models from (edges, values) pairs."""

    def _make(mu, g=((0.0, 10.0), (0.0,)), k=((1.0, 2.0), (0.0,))):
        return HawkesModel(
            mu=mu,
            g=HistogramFunction(np.asarray(g[0]), np.asarray(g[1])),
            k=HistogramFunction(np.asarray(k[0]), np.asarray(k[1]), open_ended=True),
        )

    return _make


@pytest.fixture
def homogeneous_model(make_model):
    """No triggering: lambda is the background rate everywhere."""
    return make_model(0.5)
