from typing import List

import numpy as np
from pydantic import model_validator

from proxiskin.commons.schemas import BaseSchema, FloatArray, IntArray


class DataSplit(BaseSchema):
    """Frames of whole trajectories: baseline-subtracted capacitance and target positions."""

    features: FloatArray
    targets: FloatArray
    trajectory_ids: IntArray
    frame_ids: IntArray

    @model_validator(mode="after")
    def check_rows(self) -> "DataSplit":
        n = len(self.trajectory_ids)
        if self.targets.reshape(-1, 3).shape[0] != n or len(self.frame_ids) != n:
            raise ValueError("one target and frame id per feature row")
        if len(self.features) != n:
            raise ValueError("one feature row per frame")
        return self

    def __len__(self) -> int:
        return len(self.trajectory_ids)

    @property
    def trajectories(self) -> List[int]:
        return sorted(set(self.trajectory_ids.tolist()))


class PssDataset(BaseSchema):
    train: DataSplit
    validation: DataSplit
    test: DataSplit
    channel_scale: FloatArray
    origin: FloatArray

    @property
    def sensor_count(self) -> int:
        return len(self.channel_scale)

    def feature_range(self) -> tuple[np.ndarray, np.ndarray]:
        return self.train.features.min(axis=0), self.train.features.max(axis=0)
