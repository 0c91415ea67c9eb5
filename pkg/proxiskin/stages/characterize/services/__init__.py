from proxiskin.stages.characterize.services.analysis import (
    area_vs_range_report,
    assign_nearest_sensor,
    detection_range,
    fit_power_law,
    isolate_approach,
    snr_series,
)
from proxiskin.stages.characterize.services.characterization import (
    characterize_sensors,
    characterize_skin,
)

__all__ = [
    "area_vs_range_report",
    "assign_nearest_sensor",
    "characterize_sensors",
    "characterize_skin",
    "detection_range",
    "fit_power_law",
    "isolate_approach",
    "snr_series",
]
