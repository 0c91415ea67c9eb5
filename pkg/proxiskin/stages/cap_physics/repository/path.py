from pathlib import Path
from typing import List

import numpy as np
from loguru import logger
from pydantic import TypeAdapter

from proxiskin.commons.errors import InvalidParameter, MissingArtifact
from proxiskin.commons.schemas import BaseSchema
from proxiskin.stages.cap_physics.schema import ObjectPath


class Waypoint(BaseSchema):
    t: float
    x: float
    y: float
    z: float


_WAYPOINTS = TypeAdapter(List[Waypoint])


class PathRepository:
    """
    Hand-made object trajectories.

    ``.csv`` files hold ``t, x, y, z`` rows with an optional header line.
    ``.json`` files hold either a list of ``{"t", "x", "y", "z"}`` waypoints
    or an object path with ``times`` and ``positions``.
    """

    SUFFIXES = (".csv", ".json")

    def load(self, path: Path | str) -> ObjectPath:
        path = Path(path)
        if not path.is_file():
            raise MissingArtifact(str(path))
        suffix = path.suffix.lower()
        if suffix == ".csv":
            object_path = self._load_csv(path)
        elif suffix == ".json":
            object_path = self._load_json(path)
        else:
            raise InvalidParameter(
                f"Unsupported trajectory file {path.name}, expected one of {', '.join(self.SUFFIXES)}",
                data={"path": str(path)},
            )
        logger.info(
            f"Loaded {len(object_path.times)} waypoints over {object_path.duration:.2f}s from {path}"
        )
        return object_path

    def save_csv(self, object_path: ObjectPath, path: Path | str) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        table = np.column_stack([object_path.times, object_path.positions])
        np.savetxt(path, table, fmt="%.17g", delimiter=",", header="t,x,y,z", comments="")
        return path

    @staticmethod
    def _load_csv(path: Path) -> ObjectPath:
        with path.open() as handle:
            first = handle.readline()
        try:
            float(first.split(",")[0])
            has_header = False
        except ValueError:
            has_header = True
        table = np.loadtxt(path, delimiter=",", skiprows=int(has_header), ndmin=2)
        if table.shape[1] != 4:
            raise InvalidParameter(
                f"{path.name} needs 4 columns t, x, y, z, found {table.shape[1]}",
                data={"path": str(path)},
            )
        return ObjectPath(times=table[:, 0], positions=table[:, 1:4])

    @staticmethod
    def _load_json(path: Path) -> ObjectPath:
        raw = path.read_text()
        if raw.lstrip().startswith("["):
            waypoints = _WAYPOINTS.validate_json(raw)
            return ObjectPath(
                times=np.array([w.t for w in waypoints]),
                positions=np.array([[w.x, w.y, w.z] for w in waypoints]).reshape(-1, 3),
            )
        return ObjectPath.model_validate_json(raw)
