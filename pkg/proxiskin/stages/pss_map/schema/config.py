from typing import List, Tuple

from pydantic import Field, model_validator

from proxiskin.commons.enums import BootstrapMode
from proxiskin.commons.schemas import ConfigSchema


class DatasetConfig(ConfigSchema):
    trajectories: int = Field(default=6, ge=3, description="Recordings simulated for training")
    baseline_window_s: float = Field(default=2.0, gt=0.0)
    split: Tuple[float, float, float] = Field(default=(0.7, 0.15, 0.15))

    @model_validator(mode="after")
    def check_split(self) -> "DatasetConfig":
        if any(f < 0.0 for f in self.split) or abs(sum(self.split) - 1.0) > 1e-9:
            raise ValueError("split fractions must be non-negative and sum to 1")
        return self


class EnsembleConfig(ConfigSchema):
    members: int = Field(default=100, ge=1)
    hidden_sizes: List[int] = Field(default_factory=lambda: [64, 64])
    dropout: float = Field(default=0.1, ge=0.0, lt=1.0)
    learning_rate: float = Field(default=1.0e-4, gt=0.0)
    epochs: int = Field(default=40, ge=1)
    batch_size: int = Field(default=64, ge=1)
    subset_fraction: float = Field(default=0.5, gt=0.0, le=1.0)
    bootstrap: BootstrapMode = Field(default=BootstrapMode.HALF_SUBSET)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    epsilon: float = Field(default=1.0e-8, gt=0.0)

    @model_validator(mode="after")
    def check_hidden(self) -> "EnsembleConfig":
        if not self.hidden_sizes or min(self.hidden_sizes) < 1:
            raise ValueError("hidden_sizes must list positive widths")
        return self


class GridConfig(ConfigSchema):
    samples: int = Field(default=50000, ge=0)
    spacing: float = Field(default=0.01, gt=0.0)
    lower: Tuple[float, float, float] = Field(
        default=(-0.3, -0.3, -0.05), description="Grid corner relative to the skin origin"
    )
    upper: Tuple[float, float, float] = Field(default=(0.3, 0.3, 0.6))
    cutoff: float = Field(default=0.08, gt=0.0, description="Usable PSS upper bound on sigma_cal")
    chunk: int = Field(default=5000, ge=1, description="Predictions per batch")

    @model_validator(mode="after")
    def check_bounds(self) -> "GridConfig":
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("grid lower corner must be below the upper corner")
        return self
