from enum import Enum


class MeshSource(str, Enum):
    """Where the base surface mesh comes from."""

    FLAT_PATCH = "flat_patch"
    FILE = "file"


class LayoutMode(str, Enum):
    """Sensor point distribution strategy."""

    POISSON = "poisson"
    EXPLICIT = "explicit"


class BootstrapMode(str, Enum):
    """Per-member training subset strategy."""

    HALF_SUBSET = "half_subset"
    CLASSIC = "classic"


class JointType(str, Enum):
    REVOLUTE = "revolute"
    PRISMATIC = "prismatic"
