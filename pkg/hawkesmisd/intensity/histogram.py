"""Step-function (histogram) estimators for g(t) and k(m)."""

from dataclasses import dataclass
from typing import Any, Dict, Sequence, Union

import numpy as np

from hawkesmisd.exceptions import EdgeError
from hawkesmisd.utils.validators import as_edges, as_nonnegative

ArrayLike = Union[float, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class HistogramFunction:
    """Piecewise-constant function on right-open bins [e_{l-1}, e_l).

    Outside [e_0, e_L) the function is 0, except that an ``open_ended``
    function keeps its last value for every x >= e_L. Mark productivity
    uses the open-ended form so the largest events never lose their effect.
    """

    edges: np.ndarray
    values: np.ndarray
    open_ended: bool = False

    def __post_init__(self):
        edges = as_edges(self.edges)
        values = as_nonnegative(self.values)
        if values.size != edges.size - 1:
            raise EdgeError(f"need {edges.size - 1} values for {edges.size} edges, got {values.size}")
        edges.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, edges: Sequence[float], open_ended: bool = False) -> "HistogramFunction":
        edges = as_edges(edges)
        return cls(edges, np.zeros(edges.size - 1), open_ended=open_ended)

    @property
    def n_bins(self) -> int:
        return int(self.values.size)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def support_end(self) -> float:
        return float(np.inf) if self.open_ended else float(self.edges[-1])

    def bin_index(self, x: ArrayLike) -> np.ndarray:
        """Bin of each x, or -1 where the function is zero by support."""
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.edges, x, side="right") - 1
        if self.open_ended:
            idx = np.where(idx >= 0, np.minimum(idx, self.n_bins - 1), -1)
        else:
            idx = np.where(idx >= self.n_bins, -1, idx)
        return idx

    def __call__(self, x: ArrayLike) -> np.ndarray:
        idx = self.bin_index(x)
        out = np.where(idx >= 0, self.values[np.clip(idx, 0, None)], 0.0)
        return out

    def masses(self) -> np.ndarray:
        """Integral over each bin."""
        return self.values * self.widths

    def integral(self) -> float:
        return float(np.sum(self.masses()))

    def cdf(self, x: ArrayLike) -> np.ndarray:
        """Integral of the function from e_0 to x (bounded support only)."""
        x = np.asarray(x, dtype=float)
        cum = np.concatenate(([0.0], np.cumsum(self.masses())))
        clipped = np.clip(x, self.edges[0], self.edges[-1])
        idx = np.clip(np.searchsorted(self.edges, clipped, side="right") - 1, 0, self.n_bins - 1)
        return cum[idx] + self.values[idx] * (clipped - self.edges[idx])

    def to_dict(self) -> Dict[str, Any]:
        return {"edges": self.edges.tolist(), "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], open_ended: bool = False) -> "HistogramFunction":
        return cls(np.asarray(data["edges"], dtype=float), np.asarray(data["values"], dtype=float), open_ended)


def eval_step(f: HistogramFunction, x: float) -> float:
    """Value of the bin containing x; 0 outside the support."""
    return float(f(x))
