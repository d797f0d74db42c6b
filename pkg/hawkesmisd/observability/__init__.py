"""Observability module initialization."""

from hawkesmisd.observability.logging import RunLogger, StructuredFormatter, setup_logging
from hawkesmisd.observability.metrics import MetricsCollector, get_metrics_collector

__all__ = ["MetricsCollector", "get_metrics_collector", "setup_logging", "StructuredFormatter", "RunLogger"]
