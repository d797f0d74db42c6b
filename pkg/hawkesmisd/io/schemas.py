"""Pydantic models for every JSON file the tool reads or writes."""

from datetime import date
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class HistogramSchema(BaseModel):
    """``{"edges": [...], "values": [...]}``"""

    model_config = ConfigDict(extra="forbid")

    edges: List[float] = Field(min_length=2)
    values: List[float] = Field(min_length=1)

    @model_validator(mode="after")
    def _shape(self) -> "HistogramSchema":
        if len(self.values) != len(self.edges) - 1:
            raise ValueError(f"need {len(self.edges) - 1} values for {len(self.edges)} edges")
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise ValueError("edges must be strictly increasing")
        if any(v < 0 for v in self.values):
            raise ValueError("values must be non-negative")
        return self


class HawkesModelSchema(BaseModel):
    """Interchange format shared by every command."""

    model_config = ConfigDict(extra="ignore")

    mu: float = Field(ge=0)
    g: HistogramSchema
    k: HistogramSchema

    @field_validator("g")
    @classmethod
    def _g_starts_at_zero(cls, g: HistogramSchema) -> HistogramSchema:
        if g.edges[0] != 0:
            raise ValueError("g edges must start at 0")
        return g


class WindowSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    start: date
    T: float = Field(gt=0)


class FittedModelSchema(HawkesModelSchema):
    """Model JSON extended with the fit's uncertainty and convergence data."""

    se_g: List[float]
    se_k: List[float]
    eta_t: float = Field(ge=0)
    iterations: int = Field(ge=0)
    converged: bool
    epsilon: Optional[float] = None
    max_delta: Optional[float] = None
    log_likelihood: Optional[float] = None
    truncated_mass: Optional[float] = None
    window: Optional[WindowSchema] = None


class BaselineConfigSchema(BaseModel):
    """``{"t_excite": 13, "n_secondary": 0.30, "n0": 0.01}``; n0 may be a per-day list."""

    model_config = ConfigDict(extra="forbid")

    t_excite: float = Field(gt=0)
    n_secondary: float = Field(ge=0)
    n0: Union[float, List[float]] = 0.0

    @field_validator("n0")
    @classmethod
    def _n0_nonnegative(cls, n0: Union[float, List[float]]) -> Union[float, List[float]]:
        values = n0 if isinstance(n0, list) else [n0]
        if not values or any(v < 0 for v in values):
            raise ValueError("n0 must be non-negative (and non-empty when a table)")
        return n0


class MarkDistributionSchema(BaseModel):
    """``{"3": 0.5, "6": 0.5}`` mapping victim counts to probabilities."""

    probabilities: Dict[int, float]

    @field_validator("probabilities")
    @classmethod
    def _valid(cls, probabilities: Dict[int, float]) -> Dict[int, float]:
        if not probabilities:
            raise ValueError("mark distribution is empty")
        if any(m < 1 for m in probabilities):
            raise ValueError("marks must be >= 1")
        if any(p < 0 for p in probabilities.values()):
            raise ValueError("probabilities must be non-negative")
        if abs(sum(probabilities.values()) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {sum(probabilities.values())!r}, not 1")
        return probabilities
