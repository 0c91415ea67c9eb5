from proxiskin.stages.cap_physics.services.baseline import noise_baseline
from proxiskin.stages.cap_physics.services.coupling import (
    coupling_capacitance,
    coupling_vector,
    parasitic_matrix,
    surface_distances,
)
from proxiskin.stages.cap_physics.services.drift import DriftCompensator, drift_compensator
from proxiskin.stages.cap_physics.services.measurement import (
    capacitance_from_counts,
    counts_from_capacitance,
    estimate_distance,
)
from proxiskin.stages.cap_physics.services.protocol import approach_protocol
from proxiskin.stages.cap_physics.services.simulator import (
    SkinSensorModel,
    simulate_trajectory,
)

__all__ = [
    "DriftCompensator",
    "SkinSensorModel",
    "approach_protocol",
    "capacitance_from_counts",
    "counts_from_capacitance",
    "coupling_capacitance",
    "coupling_vector",
    "drift_compensator",
    "estimate_distance",
    "noise_baseline",
    "parasitic_matrix",
    "simulate_trajectory",
    "surface_distances",
]
