from typing import List, Optional

import numpy as np
from pydantic import Field, model_validator

from proxiskin.commons.schemas import BaseSchema, FloatArray, IntArray
from proxiskin.stages.pss_map.schema.config import EnsembleConfig


class MlpModel(BaseSchema):
    """Fully connected ReLU network, identity output."""

    layer_sizes: List[int]
    weights: List[FloatArray]
    biases: List[FloatArray]
    dropout_rate: float = Field(default=0.1, ge=0.0, lt=1.0)

    @model_validator(mode="after")
    def check_parameters(self) -> "MlpModel":
        if len(self.weights) != len(self.layer_sizes) - 1 or len(self.biases) != len(self.weights):
            raise ValueError("one weight matrix and bias per layer transition")
        for i, (W, b) in enumerate(zip(self.weights, self.biases)):
            if W.shape != (self.layer_sizes[i], self.layer_sizes[i + 1]):
                raise ValueError(f"layer {i} weight shape {W.shape} does not match layer sizes")
            if b.shape != (self.layer_sizes[i + 1],):
                raise ValueError(f"layer {i} bias shape {b.shape} does not match layer sizes")
            if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
                raise ValueError(f"layer {i} has non-finite parameters")
        return self

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]


class FeatureScaling(BaseSchema):
    """Input squashing ``asinh(C / channel_scale)`` and target standardization."""

    channel_scale: FloatArray
    feature_low: FloatArray
    feature_high: FloatArray
    target_mean: FloatArray
    target_std: FloatArray

    def transform(self, features: np.ndarray) -> np.ndarray:
        return np.arcsinh(np.asarray(features, dtype=float) / self.channel_scale)

    def targets_to_model(self, targets: np.ndarray) -> np.ndarray:
        return (np.asarray(targets, dtype=float) - self.target_mean) / self.target_std

    def targets_from_model(self, outputs: np.ndarray) -> np.ndarray:
        return outputs * self.target_std + self.target_mean


class Calibration(BaseSchema):
    """Affine map from raw ensemble spread to expected error."""

    slope: float
    intercept: float
    pearson_r: float
    n_samples: int


class Ensemble(BaseSchema):
    """Bootstrap MLP ensemble mapping capacitance to object position near a skin unit."""

    config: EnsembleConfig
    master_seed: int
    member_seeds: List[int]
    members: List[MlpModel]
    scaling: FeatureScaling
    origin: FloatArray = Field(description="Skin-unit origin in the link frame")
    origin_frame: str
    loss_history: List[List[float]] = Field(default_factory=list)
    calibration: Optional[Calibration] = None

    @model_validator(mode="after")
    def check_members(self) -> "Ensemble":
        if len(self.members) != self.config.members or len(self.member_seeds) != len(self.members):
            raise ValueError("member count must match the configured ensemble size")
        return self

    @property
    def input_dim(self) -> int:
        return self.members[0].input_dim


class PssPrediction(BaseSchema):
    """Ensemble mean position in the skin-origin frame and its spread, one row per input."""

    mu_p: FloatArray
    sigma_raw: FloatArray
    sigma_cal: FloatArray

    def usable(self, cutoff: float = 0.08) -> np.ndarray:
        return self.sigma_cal <= cutoff


class PssGrid(BaseSchema):
    """Occupied cells of a regular grid around the skin origin."""

    origin: FloatArray
    lower: FloatArray
    spacing: float = Field(gt=0.0)
    extents: IntArray
    cells: IntArray = Field(description="(M, 3) integer indices of occupied cells")
    counts: IntArray
    mean_sigma: FloatArray
    cutoff: float
    samples: int
    out_of_extent: int = Field(default=0, ge=0, description="Predictions outside the grid bounds")

    @property
    def positions(self) -> np.ndarray:
        """World (link-frame) position of each occupied cell."""
        return self.origin + self.lower + self.cells.reshape(-1, 3) * self.spacing

    @property
    def usable(self) -> np.ndarray:
        return self.mean_sigma <= self.cutoff


class DistanceBin(BaseSchema):
    center_m: float
    median_error_m: float
    count: int


class PssMetrics(BaseSchema):
    frames: int
    mean_error_m: float
    median_error_m: float
    pearson_error_sigma: float
    bins: List[DistanceBin]
    knee_distance_m: Optional[float]
    median_error_in_range_m: Optional[float]
    median_error_out_of_range_m: Optional[float]
    out_of_range_ratio: Optional[float]
