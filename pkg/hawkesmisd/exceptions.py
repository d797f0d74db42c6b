"""Error hierarchy for hawkesmisd.

Every error is also a ``ValueError`` so callers that only care about bad input
can catch the builtin.
"""

from typing import Any, Optional


class HawkesMISDError(ValueError):
    """Base class for all hawkesmisd errors."""


class CatalogError(HawkesMISDError):
    """Problems with an input event catalog."""


class CatalogParseError(CatalogError):
    """The CSV itself could not be tokenized."""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"{message}{where}")


class RowError(CatalogError):
    """A single data row holds an unparseable or invalid value."""

    def __init__(self, row: int, column: str, value: Any, reason: str = "unparseable value"):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}: {reason} in column '{column}': {value!r}")


class SchemaMappingError(CatalogError):
    """A mapping refers to a column the input does not have."""

    def __init__(self, column: str, available: Optional[list] = None):
        self.column = column
        hint = f"; available columns: {', '.join(available)}" if available else ""
        super().__init__(f"column '{column}' not found in input header{hint}")


class CatalogWindowError(CatalogError):
    """Catalog events fall outside the window a model was fitted on."""


class ConfigurationError(HawkesMISDError):
    """Invalid fit, simulation or command configuration."""


class EdgeError(ConfigurationError):
    """Bin edges are not strictly increasing or violate a required anchor."""


class MarkBinError(ConfigurationError):
    """A mark bin holds no events, or a mark falls below the first edge."""

    def __init__(self, bin_index: int, message: str):
        self.bin_index = bin_index
        super().__init__(message)


class FitError(HawkesMISDError):
    """The EM fit cannot proceed."""


class EmptyCatalogError(FitError):
    """Fitting requires at least one event."""


class FitDegeneracyError(FitError):
    """The conditional intensity vanished at an observed event."""

    def __init__(self, event_index: int):
        self.event_index = event_index
        super().__init__(
            f"conditional intensity is zero at event {event_index}; "
            "background rate is 0 and no earlier event reaches it"
        )


class SimulationError(HawkesMISDError):
    """Simulation refused or failed."""


class SupercriticalError(SimulationError):
    """Branching ratio at or above one without an explicit override."""

    def __init__(self, rho: float):
        self.rho = rho
        super().__init__(
            f"branching ratio rho={rho:.6g} >= 1; the process is supercritical "
            "(pass allow_supercritical to simulate anyway)"
        )


class DomainError(HawkesMISDError):
    """Argument outside the domain of a closed-form expression."""


class EmptyResidualError(HawkesMISDError):
    """Uniformity test requested on a residual process with no points."""
