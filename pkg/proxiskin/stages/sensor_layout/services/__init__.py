from proxiskin.stages.sensor_layout.services.nodules import (
    nearest_neighbor_distances,
    place_nodules,
)
from proxiskin.stages.sensor_layout.services.resistance import wire_resistance
from proxiskin.stages.sensor_layout.services.sampling import (
    poisson_disk_sample,
    snap_to_surface,
)

__all__ = [
    "nearest_neighbor_distances",
    "place_nodules",
    "poisson_disk_sample",
    "snap_to_surface",
    "wire_resistance",
]
