from typing import List, Tuple

import numpy as np
from pydantic import Field, model_validator

from proxiskin.commons.schemas import BaseSchema, ConfigSchema, FloatArray

Vector3 = Tuple[float, float, float]


class ObstacleEstimate(BaseSchema):
    """Obstacle surface point seen by one sensor, projected along its normal."""

    sensor_id: int
    distance: float = Field(ge=0.0)
    world_point: FloatArray
    confidence: float = Field(description="SNR of the reading")


class ControllerConfig(ConfigSchema):
    """Cartesian tracking gains and the skin-driven repulsion."""

    k_track: float = Field(default=5.0, ge=0.0, description="Position feedback gain (1/s)")
    k_rep: float = Field(default=0.5, ge=0.0, description="Repulsion speed at contact (m/s)")
    d_safe: float = Field(default=0.10, gt=0.0, description="Distance where repulsion starts (m)")
    s_min: float = Field(default=0.1, ge=0.0, le=1.0, description="Lowest speed scaling")
    max_speed: float = Field(default=0.25, gt=0.0, description="Clamp on the tracking velocity (m/s)")
    snr_threshold: float = Field(default=3.5, gt=0.0)
    drift_kp: float = Field(default=1.0, ge=0.0)
    drift_ki: float = Field(default=0.1, ge=0.0)
    drift_timescale: float = Field(default=60.0, gt=0.0, description="Baseline adaptation (s)")


class Intruder(ConfigSchema):
    """Static sphere present during ``[t_on, t_off)``."""

    center: Vector3
    radius: float = Field(default=0.04, gt=0.0)
    t_on: float = Field(default=0.0, ge=0.0)
    t_off: float = Field(default=6.0, ge=0.0)

    @model_validator(mode="after")
    def check_window(self) -> "Intruder":
        if self.t_off < self.t_on:
            raise ValueError("intruder t_off must not precede t_on")
        return self

    def active(self, t: float) -> bool:
        return self.t_on <= t < self.t_off


class ScenarioConfig(ConfigSchema):
    """Circle tracing with a desk-scale Cartesian robot carrying a ring skin on its end effector."""

    circle_center: Vector3 = (0.0, 0.0, 0.3)
    circle_radius: float = Field(default=0.15, gt=0.0)
    period_s: float = Field(default=8.0, gt=0.0)
    dt: float = Field(default=0.01, gt=0.0)
    duration_s: float = Field(default=20.0, gt=0.0)
    calibration_s: float = Field(default=2.0, gt=0.0, description="Intruder-free hold before tracking")
    robot: str = Field(default="point", pattern="^(point|planar_lift)$")
    ring_sensors: int = Field(default=8, ge=1)
    ring_radius: float = Field(default=0.04, gt=0.0)
    electrode_radius: float = Field(default=0.014, gt=0.0)
    intruders: List[Intruder] = Field(
        default_factory=lambda: [Intruder(center=(0.0, 0.15, 0.3))]
    )
    avoidance: bool = True

    @property
    def angular_speed(self) -> float:
        return 2.0 * np.pi / self.period_s

    @property
    def cruise_speed(self) -> float:
        return self.circle_radius * self.angular_speed

    def desired(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        """Desired position and feed-forward velocity on the circle at time ``t``."""
        c = np.asarray(self.circle_center)
        a = self.angular_speed * t
        p = c + self.circle_radius * np.array([np.cos(a), np.sin(a), 0.0])
        v = self.cruise_speed * np.array([-np.sin(a), np.cos(a), 0.0])
        return p, v

    def circle_deviation(self, points: np.ndarray) -> np.ndarray:
        """Distance of each point to the circle curve."""
        rel = np.asarray(points, dtype=float).reshape(-1, 3) - np.asarray(self.circle_center)
        radial = np.linalg.norm(rel[:, :2], axis=1) - self.circle_radius
        return np.hypot(radial, rel[:, 2])
