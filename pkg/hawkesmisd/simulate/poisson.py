"""Homogeneous Poisson tooling shared by the simulator and super-thinning."""

from typing import Optional, Tuple, Union

import numpy as np

SeedLike = Union[int, np.random.Generator, None]

_HEIGHT_CHUNK = 256


def as_generator(seed: SeedLike) -> np.random.Generator:
    """A numpy Generator from a seed or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def simulate_homogeneous(rate: float, T: float, seed: SeedLike = None) -> np.ndarray:
    """Sorted event times of a rate-``rate`` Poisson process on [0, T]."""
    if rate < 0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    rng = as_generator(seed)
    count = rng.poisson(rate * T)
    return np.sort(rng.uniform(0.0, T, size=count))


def homogeneous_by_height(
    rate: float,
    T: float,
    seed: SeedLike = None,
    height_rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Points of a rate-``rate`` process on [0, T], each with a height in [0, rate).

    Points are those of a unit-intensity Poisson process on [0, T] x [0, inf)
    below ``rate``, generated in increasing height. For fixed generators the
    points for a larger rate are a superset of those for a smaller one.
    Returns ``(times, heights)`` in height order.
    """
    if rate < 0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    time_rng = as_generator(seed)
    height_rng = height_rng or time_rng

    heights = []
    times = []
    level = 0.0
    while True:
        gaps = height_rng.exponential(1.0 / T, size=_HEIGHT_CHUNK)
        chunk_heights = level + np.cumsum(gaps)
        chunk_times = time_rng.uniform(0.0, T, size=_HEIGHT_CHUNK)
        below = chunk_heights < rate
        heights.append(chunk_heights[below])
        times.append(chunk_times[below])
        if not below.all():
            break
        level = float(chunk_heights[-1])
    return np.concatenate(times), np.concatenate(heights)
