from typing import List, Optional

from pydantic import Field

from proxiskin.commons.schemas import BaseSchema, ConfigSchema, FloatArray


class CharacterizeConfig(ConfigSchema):
    snr_threshold: float = Field(default=3.5, gt=0.0)
    noise_floor_k: float = Field(default=1.0, ge=0.0, description="Noise floor at mu_n + k sigma_n")
    window_s: float = Field(default=2.0, gt=0.0, description="Calibration window at each end")
    smoothing_window: int = Field(default=1, ge=1, description="SNR moving-average length, 1 = none")
    weighted_fit: bool = Field(default=False, description="Weight log-space fit by SNR")
    contact_distance: float = Field(default=0.003, gt=0.0, description="Object-to-electrode distance counted as contact")


class ApproachSamples(BaseSchema):
    """Isolated approach of one sensor: surface distance and signal capacitance."""

    sensor_id: int
    d: FloatArray
    c_signal: FloatArray
    noise_floor_distance: Optional[float] = None

    def __len__(self) -> int:
        return len(self.d)


class PowerLawFit(BaseSchema):
    """Log-space least-squares fit of C = k / d^w."""

    sensor_id: int
    k: float = Field(gt=0.0)
    w: float
    pearson_r: float
    n_samples: int = Field(ge=5)
    w_in_band: bool = Field(description="0.4 <= w < 1")


class SensorCharacterization(BaseSchema):
    sensor_id: int
    area_m2: float
    wire_length_m: float
    mu_n: float
    sigma_n: float
    fit: Optional[PowerLawFit] = None
    max_snr_at_contact: float = Field(ge=0.0)
    detection_range_m: Optional[float] = Field(default=None, ge=0.0)


class CharacterizationReport(BaseSchema):
    snr_threshold: float
    noise_floor_k: float
    window_s: float
    sensors: List[SensorCharacterization]

    def fit_for(self, sensor_id: int) -> Optional[PowerLawFit]:
        return next((s.fit for s in self.sensors if s.sensor_id == sensor_id), None)

    @property
    def detection_ranges(self) -> List[Optional[float]]:
        return [s.detection_range_m for s in self.sensors]


class AreaRangeRow(BaseSchema):
    sensor_id: int
    area_m2: float
    detection_range_m: Optional[float]


class AreaRangeReport(BaseSchema):
    rows: List[AreaRangeRow]
    pearson_r: float
