import numpy as np
from pydantic import Field, model_validator

from proxiskin.commons.geometry import apply_transform, invert_transform
from proxiskin.commons.schemas import BaseSchema, FloatArray, IntArray


class SensorPoints(BaseSchema):
    """Sampled sensor sites on the outer dermis surface."""

    points: FloatArray
    face_ids: IntArray

    @model_validator(mode="after")
    def check_shapes(self) -> "SensorPoints":
        if self.points.reshape(-1, 3).shape[0] != len(self.face_ids):
            raise ValueError("one face id per point is required")
        return self

    def __len__(self) -> int:
        return len(self.face_ids)


class Electrode(BaseSchema):
    """Cylindrical nodule embedded in the dermis, acting as a sensing plate."""

    id: int = Field(ge=0)
    center: FloatArray
    normal: FloatArray
    radius: float = Field(gt=0.0)
    depth: float = Field(ge=0.0, description="Inset of the top face below the outer surface")
    area: float = Field(gt=0.0, description="Top-face area (m^2)")
    link_frame: str
    local_pose: FloatArray = Field(description="4x4 pose in the link frame, row-major")

    @model_validator(mode="after")
    def check_geometry(self) -> "Electrode":
        if self.center.shape != (3,) or self.normal.shape != (3,):
            raise ValueError("center and normal must be 3-vectors")
        if abs(float(np.linalg.norm(self.normal)) - 1.0) > 1e-9:
            raise ValueError("normal must be unit length")
        if self.local_pose.shape != (4, 4):
            raise ValueError("local_pose must be a 4x4 matrix")
        return self

    def world_pose(self, link_transform: np.ndarray) -> np.ndarray:
        return np.asarray(link_transform) @ self.local_pose

    def to_link(self, link_transform: np.ndarray, world_points: np.ndarray) -> np.ndarray:
        """Express world points in this electrode's local frame."""
        return apply_transform(invert_transform(self.world_pose(link_transform)), world_points)
