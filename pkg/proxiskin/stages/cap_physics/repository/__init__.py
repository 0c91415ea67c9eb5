from proxiskin.stages.cap_physics.repository.frames import FramesRepository
from proxiskin.stages.cap_physics.repository.path import PathRepository, Waypoint

__all__ = ["FramesRepository", "PathRepository", "Waypoint"]
