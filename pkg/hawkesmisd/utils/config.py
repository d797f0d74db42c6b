"""Configuration management."""

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from hawkesmisd.exceptions import ConfigurationError


@dataclass
class Config:
    """Tool-wide defaults, overridable by a config file and then by CLI flags."""

    # Observability settings
    log_level: str = "INFO"
    log_structured: bool = False
    log_file: Optional[str] = None
    metrics_enabled: bool = True

    # Fit settings
    epsilon: float = 1e-5
    max_iter: int = 500
    time_edges: Optional[List[float]] = None  # None: 0, 14, 91, 182, 365, T
    mark_quantiles: int = 4
    offspring_window_days: float = 13.0
    p_dump_threshold: float = 1e-12

    # Diagnostics settings
    b_mode: str = "median"
    ks_alpha: float = 0.05

    # Simulation settings
    simulation_epoch: str = "2000-01-01"

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ConfigurationError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.mark_quantiles < 1:
            raise ConfigurationError(f"mark_quantiles must be >= 1, got {self.mark_quantiles}")
        if self.offspring_window_days <= 0:
            raise ConfigurationError("offspring_window_days must be positive")

    @classmethod
    def from_file(cls, path: str) -> "Config":
        """Load config from file (YAML or JSON)."""
        file_path = Path(path)

        if not file_path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")

        content = file_path.read_text(encoding="utf-8")

        if file_path.suffix in (".yaml", ".yml"):
            data = yaml.safe_load(content) or {}
        elif file_path.suffix == ".json":
            data = json.loads(content)
        else:
            raise ConfigurationError(f"Unsupported config file format: {path}")

        if not isinstance(data, dict):
            raise ConfigurationError(f"Config file {path} must hold a mapping")

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"Unknown config keys in {path}: {', '.join(unknown)}")

        return cls(**data)

    def merged(self, overrides: Dict[str, Any]) -> "Config":
        """Return a copy with the non-None overrides applied."""
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None and k in data})
        return Config(**data)

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary."""
        return asdict(self)
