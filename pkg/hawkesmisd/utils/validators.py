"""Numeric validation helpers shared by the model types."""

import logging
from typing import Iterable

import numpy as np

from hawkesmisd.exceptions import EdgeError

logger = logging.getLogger(__name__)


def as_edges(edges: Iterable[float], name: str = "edges") -> np.ndarray:
    """Coerce to a float array of at least two strictly increasing finite edges."""
    arr = np.asarray(list(edges), dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise EdgeError(f"{name} needs at least two values, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise EdgeError(f"{name} must be finite")
    if np.any(np.diff(arr) <= 0):
        raise EdgeError(f"{name} must be strictly increasing: {arr.tolist()}")
    return arr


def as_nonnegative(values: Iterable[float], name: str = "values") -> np.ndarray:
    """Coerce to a float array of finite non-negative values."""
    arr = np.asarray(list(values), dtype=float)
    if arr.ndim != 1:
        raise EdgeError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise EdgeError(f"{name} must be finite and non-negative: {arr.tolist()}")
    return arr


def is_lower_triangular(matrix: np.ndarray) -> bool:
    """True if no mass sits above the diagonal."""
    return bool(np.all(np.triu(matrix, k=1) == 0))


def rows_sum_to_one(matrix: np.ndarray, tol: float = 1e-10) -> bool:
    """True if every row sums to one within ``tol``."""
    if matrix.size == 0:
        return True
    return bool(np.all(np.abs(matrix.sum(axis=1) - 1.0) <= tol))
