from proxiskin.stages.cap_physics.schema.circuit import (
    CircuitParams,
    CouplingModel,
    CouplingParams,
    EnvironmentModel,
)
from proxiskin.stages.cap_physics.schema.recording import RecordingMeta
from proxiskin.stages.cap_physics.schema.signal import (
    CapacitanceFrame,
    NoiseBaseline,
    ObjectPath,
    ProtocolConfig,
    Trajectory,
)

__all__ = [
    "CapacitanceFrame",
    "CircuitParams",
    "CouplingModel",
    "CouplingParams",
    "EnvironmentModel",
    "NoiseBaseline",
    "ObjectPath",
    "ProtocolConfig",
    "RecordingMeta",
    "Trajectory",
]
