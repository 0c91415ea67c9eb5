from typing import Dict, List

import numpy as np
from pydantic import Field, model_validator

from proxiskin.commons.enums import JointType
from proxiskin.commons.schemas import BaseSchema, FloatArray


class Joint(BaseSchema):
    """One actuated joint: a static parent offset followed by motion along/about ``axis``."""

    name: str
    child_link: str
    joint_type: JointType
    axis: FloatArray
    offset: FloatArray = Field(default_factory=lambda: np.eye(4), description="4x4 parent-to-joint transform")
    lower: float = -np.pi
    upper: float = np.pi

    @model_validator(mode="after")
    def check_joint(self) -> "Joint":
        if self.axis.shape != (3,) or abs(float(np.linalg.norm(self.axis)) - 1.0) > 1e-9:
            raise ValueError(f"joint {self.name}: axis must be a unit 3-vector")
        if self.offset.shape != (4, 4):
            raise ValueError(f"joint {self.name}: offset must be 4x4")
        if self.lower > self.upper:
            raise ValueError(f"joint {self.name}: lower limit above upper limit")
        return self


class KinematicChain(BaseSchema):
    """Serial chain rooted at ``base_link``; the last child link carries the end effector."""

    base_link: str = "base"
    base_transform: FloatArray = Field(default_factory=lambda: np.eye(4))
    joints: List[Joint]
    tool_offset: FloatArray = Field(default_factory=lambda: np.eye(4))

    @model_validator(mode="after")
    def check_links(self) -> "KinematicChain":
        names = [self.base_link] + [j.child_link for j in self.joints]
        if len(set(names)) != len(names):
            raise ValueError("link names must be unique")
        if not self.joints:
            raise ValueError("a chain needs at least one joint")
        return self

    @property
    def dof(self) -> int:
        return len(self.joints)

    @property
    def end_link(self) -> str:
        return self.joints[-1].child_link

    @property
    def limits(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.array([j.lower for j in self.joints]),
            np.array([j.upper for j in self.joints]),
        )


class ChainPose(BaseSchema):
    """World transform of every link for one joint configuration."""

    q: FloatArray
    links: Dict[str, FloatArray]
    end_effector: FloatArray

    @property
    def end_effector_position(self) -> np.ndarray:
        return self.end_effector[:3, 3]
