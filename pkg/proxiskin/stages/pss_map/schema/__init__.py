from proxiskin.stages.pss_map.schema.config import DatasetConfig, EnsembleConfig, GridConfig
from proxiskin.stages.pss_map.schema.dataset import DataSplit, PssDataset
from proxiskin.stages.pss_map.schema.ensemble import (
    Calibration,
    DistanceBin,
    Ensemble,
    FeatureScaling,
    MlpModel,
    PssGrid,
    PssMetrics,
    PssPrediction,
)

__all__ = [
    "Calibration",
    "DataSplit",
    "DatasetConfig",
    "DistanceBin",
    "Ensemble",
    "EnsembleConfig",
    "FeatureScaling",
    "GridConfig",
    "MlpModel",
    "PssDataset",
    "PssGrid",
    "PssMetrics",
    "PssPrediction",
]
