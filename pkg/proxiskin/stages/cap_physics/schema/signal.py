from typing import Iterator, Tuple

import numpy as np
from pydantic import Field, model_validator

from proxiskin.commons.schemas import BaseSchema, ConfigSchema, FloatArray, IntArray


class ObjectPath(BaseSchema):
    """Timed waypoints of the sphere center, linearly interpolated in between."""

    times: FloatArray
    positions: FloatArray

    @model_validator(mode="after")
    def check_times(self) -> "ObjectPath":
        if self.positions.shape != (len(self.times), 3):
            raise ValueError("one 3D position per timestamp is required")
        if len(self.times) < 1:
            raise ValueError("an object path needs at least one waypoint")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("waypoint timestamps must be strictly increasing")
        return self

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    def sample(self, frame_rate: float) -> Tuple[np.ndarray, np.ndarray]:
        """Frame times from the first waypoint at ``frame_rate`` and the interpolated positions."""
        count = int(np.floor(self.duration * frame_rate + 1e-9)) + 1
        t = self.times[0] + np.arange(count) / frame_rate
        positions = np.column_stack(
            [np.interp(t, self.times, self.positions[:, axis]) for axis in range(3)]
        )
        return t, positions


class CapacitanceFrame(BaseSchema):
    """One timestamped reading of every sensor."""

    t: float
    counts: IntArray
    truth_object_position: FloatArray
    truth_capacitances: FloatArray

    @model_validator(mode="after")
    def check_lengths(self) -> "CapacitanceFrame":
        if self.counts.shape != self.truth_capacitances.shape:
            raise ValueError("counts and capacitances must cover the same sensors")
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")
        return self


class Trajectory(BaseSchema):
    """Column store of consecutive frames from one recording."""

    t: FloatArray
    counts: IntArray
    object_positions: FloatArray
    truth_capacitances: FloatArray
    frame_rate: float = Field(gt=0.0)

    @model_validator(mode="after")
    def check_shapes(self) -> "Trajectory":
        frames = len(self.t)
        if self.counts.ndim != 2 or self.counts.shape[0] != frames:
            raise ValueError("counts must be (frames, sensors)")
        if self.truth_capacitances.shape != self.counts.shape:
            raise ValueError("truth capacitances must match counts")
        if self.object_positions.shape != (frames, 3):
            raise ValueError("object positions must be (frames, 3)")
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")
        return self

    @property
    def frame_count(self) -> int:
        return len(self.t)

    @property
    def sensor_count(self) -> int:
        return self.counts.shape[1]

    def frames(self) -> Iterator[CapacitanceFrame]:
        for i in range(self.frame_count):
            yield CapacitanceFrame(
                t=float(self.t[i]),
                counts=self.counts[i],
                truth_object_position=self.object_positions[i],
                truth_capacitances=self.truth_capacitances[i],
            )

    def window_mask(self, window_s: float) -> np.ndarray:
        """Frames within ``window_s`` of either end of the recording."""
        return (self.t < self.t[0] + window_s) | (self.t > self.t[-1] - window_s)

    def head_mask(self, window_s: float) -> np.ndarray:
        return self.t < self.t[0] + window_s


class NoiseBaseline(BaseSchema):
    """Per-sensor inactive signal statistics (counts)."""

    mu_n: FloatArray
    sigma_n: FloatArray
    window_s: float = Field(default=2.0, gt=0.0)

    @model_validator(mode="after")
    def check_sigma(self) -> "NoiseBaseline":
        if self.mu_n.shape != self.sigma_n.shape:
            raise ValueError("mu_n and sigma_n must cover the same sensors")
        if np.any(self.sigma_n <= 0.0):
            raise ValueError("sigma_n must be positive")
        return self

    def for_sensor(self, sensor_id: int) -> "NoiseBaseline":
        return NoiseBaseline(
            mu_n=self.mu_n[sensor_id : sensor_id + 1],
            sigma_n=self.sigma_n[sensor_id : sensor_id + 1],
            window_s=self.window_s,
        )


class ProtocolConfig(ConfigSchema):
    """Hover-and-touch approach recording around every sensor."""

    frame_rate: float = Field(default=20.0, gt=0.0, description="Frames per second")
    calibration_s: float = Field(default=2.0, gt=0.0, description="Far hold at both ends")
    far_distance: Tuple[float, float] = Field(default=(0.5, 0.6))
    far_lateral: float = Field(default=0.15, ge=0.0, description="Lateral jitter of the far hold")
    hover_distance: Tuple[float, float] = Field(default=(0.08, 0.12))
    hover_lateral: float = Field(default=0.01, ge=0.0)
    mid_lateral: float = Field(default=0.01, ge=0.0, description="Jitter of the mid-descent waypoint")
    transit_s: float = Field(default=2.0, gt=0.0)
    descent_s: float = Field(default=3.0, gt=0.0)
    dwell_s: float = Field(default=0.5, gt=0.0)
    ascent_s: float = Field(default=2.0, gt=0.0)

    @model_validator(mode="after")
    def check_ranges(self) -> "ProtocolConfig":
        for name in ("far_distance", "hover_distance"):
            low, high = getattr(self, name)
            if not 0.0 < low <= high:
                raise ValueError(f"{name} must be an increasing positive range")
        return self
