from proxiskin.stages.cap_physics.schema import NoiseBaseline
from proxiskin.stages.characterize.schema.report import (
    ApproachSamples,
    AreaRangeReport,
    AreaRangeRow,
    CharacterizationReport,
    CharacterizeConfig,
    PowerLawFit,
    SensorCharacterization,
)

__all__ = [
    "ApproachSamples",
    "AreaRangeReport",
    "AreaRangeRow",
    "CharacterizationReport",
    "CharacterizeConfig",
    "NoiseBaseline",
    "PowerLawFit",
    "SensorCharacterization",
]
