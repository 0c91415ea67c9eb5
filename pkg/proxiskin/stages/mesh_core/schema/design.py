from typing import List, Optional, Tuple

from pydantic import Field, model_validator

from proxiskin.commons.enums import LayoutMode
from proxiskin.commons.schemas import ConfigSchema


class DesignParams(ConfigSchema):
    """User parameter set driving skin-unit generation. Lengths in meters."""

    link_frame: str = Field(default="link0", description="Kinematic link the skin attaches to")
    weight_threshold: float = Field(default=0.5, gt=0.0, le=1.0)
    thickness: float = Field(default=0.005, gt=0.0, description="Dermis thickness")
    boundary_samples: int = Field(default=8, ge=1, description="Spline samples per rim segment")

    layout: LayoutMode = Field(default=LayoutMode.POISSON)
    explicit_points: List[Tuple[float, float, float]] = Field(
        default_factory=list,
        description="Sensor points used when layout is 'explicit'",
    )
    r_min: float = Field(default=0.02, gt=0.0, description="Poisson-disk minimum spacing")
    poisson_attempts: int = Field(default=10000, ge=1)

    radius_scale: float = Field(default=0.4, gt=0.0, le=0.5)
    nodule_depth: float = Field(default=0.001, ge=0.0)
    min_radius: float = Field(default=0.005, gt=0.0)
    max_radius: float = Field(default=0.014, gt=0.0)

    num_layers: int = Field(default=2, ge=1)
    layer_gap: float = Field(default=0.0015, gt=0.0)
    connect_radius: float = Field(default=0.0075, gt=0.0)
    port_count: int = Field(default=8, ge=1)
    a_mix: float = Field(default=0.5, ge=0.0, le=1.0)
    profile_radius: float = Field(default=0.0008, gt=0.0)
    clearance: Optional[float] = Field(
        default=None, gt=0.0, description="Defaults to twice the wire profile radius"
    )
    wire_smoothing_samples: int = Field(default=8, ge=1)

    resistance_per_meter: float = Field(default=40000.0, ge=0.0, description="Trace resistance (ohm/m)")
    base_resistor: float = Field(default=1.0e6, gt=0.0, description="Series resistor R_b (ohm)")

    seed: int = Field(default=0, description="Layout seed")

    @model_validator(mode="after")
    def check_ranges(self) -> "DesignParams":
        if self.min_radius > self.max_radius:
            raise ValueError("min_radius must not exceed max_radius")
        if self.layout == LayoutMode.EXPLICIT and not self.explicit_points:
            raise ValueError("explicit layout needs explicit_points")
        return self

    @property
    def wire_clearance(self) -> float:
        return self.clearance if self.clearance is not None else 2.0 * self.profile_radius
