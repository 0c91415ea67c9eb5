from typing import Optional

from pydantic import model_validator

from proxiskin.commons.schemas import BaseSchema, FloatArray, IntArray


class ScenarioLog(BaseSchema):
    """Per-step record of a closed-loop run. NaN marks steps without a value."""

    t: FloatArray
    desired: FloatArray
    actual: FloatArray
    speed: FloatArray
    n_obstacles: IntArray
    min_distance: FloatArray
    clearance: FloatArray
    intrusion: IntArray

    @model_validator(mode="after")
    def check_lengths(self) -> "ScenarioLog":
        n = len(self.t)
        if self.desired.shape != (n, 3) or self.actual.shape != (n, 3):
            raise ValueError("desired and actual must be (steps, 3)")
        for name in ("speed", "n_obstacles", "min_distance", "clearance", "intrusion"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} needs one entry per step")
        return self

    @property
    def steps(self) -> int:
        return len(self.t)


class ScenarioSummary(BaseSchema):
    avoidance: bool
    seed: int
    steps: int
    cruise_speed: float
    max_deviation_m: float
    min_clearance_m: Optional[float]
    min_speed_during_intrusion: Optional[float]
    post_removal_deviation_m: Optional[float]
    detections: int
    fitted_sensors: int = 0
