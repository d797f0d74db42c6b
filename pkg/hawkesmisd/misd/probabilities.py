"""The branching-structure probability matrix and the E-step."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.exceptions import FitDegeneracyError
from hawkesmisd.intensity.model import HawkesModel
from hawkesmisd.intensity.pairs import PairIndex, lagged_pairs
from hawkesmisd.utils.validators import is_lower_triangular, rows_sum_to_one

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProbabilityMatrix:
    """Lower-triangular p_ij: row i gives the chance event i is background
    (j = i) or a child of earlier event j (j < i). Rows sum to 1.
    """

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise ValueError(f"probability matrix must be square, got shape {p.shape}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return int(self.p.shape[0])

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.p)

    @property
    def background_mass(self) -> float:
        return float(np.sum(self.diagonal))

    @property
    def triggered_mass(self) -> float:
        """eta_t: total off-diagonal probability."""
        return float(np.sum(np.tril(self.p, k=-1)))

    def parent_mass(self) -> np.ndarray:
        """Expected number of children of each event (column sums below the diagonal)."""
        return np.tril(self.p, k=-1).sum(axis=0)

    def pair_mass(self, pairs: PairIndex) -> np.ndarray:
        return self.p[pairs.rows, pairs.cols]

    def max_abs_diff(self, other: "ProbabilityMatrix") -> float:
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(self.p - other.p)))

    def is_valid(self, tol: float = 1e-10) -> bool:
        """Lower-triangular, entries in [0, 1], rows summing to 1."""
        p = self.p
        return (
            is_lower_triangular(p)
            and bool(np.all((p >= 0) & (p <= 1 + tol)))
            and rows_sum_to_one(p, tol)
        )

    def to_triplets(self, threshold: float = 1e-12) -> List[Tuple[int, int, float]]:
        """Sparse ``(i, j, p)`` rows for p > threshold, 1-based indices."""
        rows, cols = np.nonzero(self.p > threshold)
        return [(int(i) + 1, int(j) + 1, float(self.p[i, j])) for i, j in zip(rows, cols)]


def init_probabilities(n: int) -> ProbabilityMatrix:
    """Row i (1-based) spreads 1/i over itself and every earlier event."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    weights = 1.0 / np.arange(1, n + 1, dtype=float)
    return ProbabilityMatrix(np.tril(np.ones((n, n))) * weights[:, None])


def e_step(
    model: HawkesModel,
    catalog: EventCatalog,
    pairs: Optional[PairIndex] = None,
) -> ProbabilityMatrix:
    """Update p_ij = g(t_i - t_j) k(m_j) / lambda(t_i) and p_ii = mu / lambda(t_i).

    Row sums are reduced in a fixed pair order, so the result is identical
    across runs.
    """
    n = catalog.n
    if pairs is None:
        pairs = lagged_pairs(catalog.times, model.g.support_end)

    trig = model.g(pairs.lags) * model.k(catalog.marks[pairs.cols])
    lam = model.mu + np.bincount(pairs.rows, weights=trig, minlength=n)

    zero = np.flatnonzero(lam <= 0)
    if zero.size:
        raise FitDegeneracyError(int(zero[0]))

    p = np.zeros((n, n))
    p[pairs.rows, pairs.cols] = trig / lam[pairs.rows]
    p[np.arange(n), np.arange(n)] = model.mu / lam
    return ProbabilityMatrix(p)
