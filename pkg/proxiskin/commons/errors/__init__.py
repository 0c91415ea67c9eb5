from .handlers import EXCEPTION_HANDLERS_MAPPING, handle_exception
from .schema import ErrorSchema
from .exception import (
    BelowBaseline,
    ConfigError,
    DegenerateFit,
    DegenerateNormal,
    DepthExceedsThickness,
    DimensionMismatch,
    DivergedMember,
    EmptyApproach,
    EmptyRegion,
    InsufficientSensors,
    InvalidParameter,
    JointLimit,
    LayersExceedThickness,
    MissingArtifact,
    NoDetection,
    ProxiskinException,
    TooFewPoints,
    TooFewSamples,
    TrajectoryTooShort,
    UncalibratedEnsemble,
    Unroutable,
)

__all__ = [
    "EXCEPTION_HANDLERS_MAPPING",
    "handle_exception",
    "ErrorSchema",
    "ProxiskinException",
    "BelowBaseline",
    "ConfigError",
    "DegenerateFit",
    "DegenerateNormal",
    "DepthExceedsThickness",
    "DimensionMismatch",
    "DivergedMember",
    "EmptyApproach",
    "EmptyRegion",
    "InsufficientSensors",
    "InvalidParameter",
    "JointLimit",
    "LayersExceedThickness",
    "MissingArtifact",
    "NoDetection",
    "TooFewPoints",
    "TooFewSamples",
    "TrajectoryTooShort",
    "UncalibratedEnsemble",
    "Unroutable",
]
