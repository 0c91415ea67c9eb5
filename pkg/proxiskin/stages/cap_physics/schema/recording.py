from typing import List

from pydantic import Field

from proxiskin.commons.schemas import BaseSchema
from proxiskin.stages.cap_physics.schema.circuit import (
    CircuitParams,
    CouplingModel,
    EnvironmentModel,
)


class RecordingMeta(BaseSchema):
    """Companion record of the parameters a frames file was simulated with."""

    name: str
    seed: int
    frame_rate: float = Field(gt=0.0)
    sensor_count: int = Field(ge=1)
    frame_count: int = Field(ge=0)
    circuits: List[CircuitParams]
    environment: EnvironmentModel
    coupling: CouplingModel
