from typing import List

import numpy as np
from pydantic import Field, model_validator

from proxiskin.commons.schemas import BaseSchema, FloatArray
from proxiskin.stages.cap_physics.schema import CircuitParams
from proxiskin.stages.mesh_core.schema import DermisShell
from proxiskin.stages.sensor_layout.schema import Electrode
from proxiskin.stages.wire_router.schema import Port, TubedWire, WirePath


class SkinUnit(BaseSchema):
    """A generated skin unit: dermis, embedded electrodes, ports and wires."""

    link_frame: str
    dermis: DermisShell
    smoothed_boundary: FloatArray
    electrodes: List[Electrode]
    ports: List[Port]
    wires: List[WirePath]
    tubes: List[TubedWire]
    wire_lengths: FloatArray = Field(description="Smoothed wire length per electrode (m)")
    resistances: FloatArray = Field(description="R_w + R_b per electrode (ohm)")
    circuits: List[CircuitParams]

    @model_validator(mode="after")
    def check_per_sensor(self) -> "SkinUnit":
        n = len(self.electrodes)
        if [e.id for e in self.electrodes] != list(range(n)):
            raise ValueError("electrode ids must be 0..n-1 in order")
        if not (len(self.wire_lengths) == len(self.resistances) == len(self.circuits) == n):
            raise ValueError("per-sensor vectors must match the electrode count")
        return self

    @property
    def sensor_count(self) -> int:
        return len(self.electrodes)

    @property
    def electrode_centers(self) -> np.ndarray:
        return np.vstack([e.center for e in self.electrodes])

    @property
    def electrode_normals(self) -> np.ndarray:
        return np.vstack([e.normal for e in self.electrodes])

    @property
    def electrode_areas(self) -> np.ndarray:
        return np.array([e.area for e in self.electrodes])

    @property
    def origin(self) -> np.ndarray:
        """Skin-unit origin: centroid of the electrode centers."""
        return self.electrode_centers.mean(axis=0)

    def wire_for(self, electrode_id: int) -> WirePath:
        return next(w for w in self.wires if w.electrode_id == electrode_id)


class SensorSummary(BaseSchema):
    id: int
    radius_m: float
    area_m2: float
    wire_length_m: float
    resistance_ohm: float
    port_id: int


class GenerationReport(BaseSchema):
    """Printed and stored after generation."""

    sensor_count: int
    port_count: int
    total_wire_length_m: float
    dermis_volume_m3: float
    sensors: List[SensorSummary]
