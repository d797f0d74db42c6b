"""Utilities module initialization."""

from hawkesmisd.utils.config import Config
from hawkesmisd.utils.validators import as_edges, as_nonnegative, is_lower_triangular, rows_sum_to_one

__all__ = ["Config", "as_edges", "as_nonnegative", "is_lower_triangular", "rows_sum_to_one"]
