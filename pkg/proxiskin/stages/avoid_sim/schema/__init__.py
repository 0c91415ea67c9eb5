from proxiskin.stages.avoid_sim.schema.chain import ChainPose, Joint, KinematicChain
from proxiskin.stages.avoid_sim.schema.controller import (
    ControllerConfig,
    Intruder,
    ObstacleEstimate,
    ScenarioConfig,
)
from proxiskin.stages.avoid_sim.schema.log import ScenarioLog, ScenarioSummary

__all__ = [
    "ChainPose",
    "ControllerConfig",
    "Intruder",
    "Joint",
    "KinematicChain",
    "ObstacleEstimate",
    "ScenarioConfig",
    "ScenarioLog",
    "ScenarioSummary",
]
