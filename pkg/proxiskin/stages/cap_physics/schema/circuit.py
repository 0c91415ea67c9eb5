import math
from typing import List, Union

import numpy as np
from pydantic import Field, field_validator

from proxiskin.commons.schemas import ConfigSchema


class CircuitParams(ConfigSchema):
    """RC charge-counting front end of one sensor."""

    n: int = Field(default=16, ge=1, description="Samples averaged per reading")
    f: float = Field(default=1.0e6, gt=0.0, description="Scaled cycle frequency (Hz)")
    R: float = Field(default=1.0e6, gt=0.0, description="Total series resistance (ohm)")
    v_ratio_threshold: float = Field(
        default=0.5, gt=0.0, lt=1.0, description="Charge level V/V_inf that stops the counter"
    )

    @property
    def beta(self) -> float:
        """Counts per farad: n * f * R * -ln(1 - v_ratio), i.e. n f R ln 2 at 1/2."""
        return self.n * self.f * self.R * -math.log(1.0 - self.v_ratio_threshold)


class CouplingParams(ConfigSchema):
    """Tuned distance law C_t = k / d^w."""

    k: float = Field(gt=0.0, description="Coupling constant (F m^w)")
    w: float = Field(gt=0.0, le=1.5, description="Sensitivity exponent")

    @classmethod
    def parallel_plate(cls, epsilon: float, area: float) -> "CouplingParams":
        """Plate capacitor special case, C = epsilon * A / d."""
        return cls(k=epsilon * area, w=1.0)


class CouplingModel(ConfigSchema):
    """Ground-truth coupling used by the simulator; k scales with electrode area."""

    k_per_area: float = Field(default=3.696e-10, gt=0.0, description="k per m^2 of plate")
    w: float = Field(default=0.7, gt=0.0, le=1.5)
    object_radius: float = Field(default=0.0125, gt=0.0, description="Sphere radius (m)")
    d_floor: float = Field(default=1.0e-4, gt=0.0, description="Contact distance clamp (m)")

    def for_area(self, area: float) -> CouplingParams:
        return CouplingParams(k=self.k_per_area * area, w=self.w)

    def for_electrode(self, electrode) -> CouplingParams:
        return self.for_area(electrode.area)


class EnvironmentModel(ConfigSchema):
    """Everything the sensor sees besides the target object."""

    c_env: Union[float, List[float]] = Field(
        default=20.0e-12, description="Baseline capacitance (F), scalar or per sensor"
    )
    drift_rate: float = Field(default=1.0e-14, ge=0.0, description="Random-walk std (F/sqrt(s))")
    noise_sigma: float = Field(default=2.0, ge=0.0, description="Counter noise std (counts)")
    parasitic_gain: float = Field(default=0.05, ge=0.0)
    parasitic_decay: float = Field(default=0.05, gt=0.0, description="Decay length (m)")

    @field_validator("c_env")
    @classmethod
    def check_non_negative(cls, value: Union[float, List[float]]) -> Union[float, List[float]]:
        if np.any(np.asarray(value, dtype=float) < 0.0):
            raise ValueError("c_env must be non-negative")
        return value

    def baseline_vector(self, sensor_count: int) -> np.ndarray:
        c_env = np.asarray(self.c_env, dtype=float)
        if c_env.ndim == 0:
            return np.full(sensor_count, float(c_env))
        if c_env.shape != (sensor_count,):
            raise ValueError(f"c_env has {c_env.size} entries for {sensor_count} sensors")
        return c_env.copy()
