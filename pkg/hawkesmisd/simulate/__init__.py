"""Synthetic catalogs by branching simulation and homogeneous Poisson tooling."""

from hawkesmisd.simulate.branching import (
    SimConfig,
    SimulationResult,
    empirical_mark_distribution,
    simulate_hawkes,
    simulate_hawkes_with_lineage,
)
from hawkesmisd.simulate.poisson import as_generator, homogeneous_by_height, simulate_homogeneous

__all__ = [
    "SimConfig",
    "SimulationResult",
    "as_generator",
    "empirical_mark_distribution",
    "homogeneous_by_height",
    "simulate_hawkes",
    "simulate_hawkes_with_lineage",
    "simulate_homogeneous",
]
