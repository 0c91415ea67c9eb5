from pathlib import Path
from typing import List, Optional

import numpy as np
from loguru import logger

from proxiskin.commons.errors import MissingArtifact
from proxiskin.commons.repository import BaseRepository, write_provenance
from proxiskin.stages.cap_physics.schema import RecordingMeta, Trajectory

FLOAT_FMT = "%.17g"


class FramesRepository:
    """
    Recorded trajectories as CSV frame tables with a JSON companion each.

    Columns: ``t, obj_x, obj_y, obj_z, s0..sN`` (counts) followed by the
    simulated ground truth ``c0..cN`` (F).
    """

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.meta = BaseRepository(RecordingMeta, self.root)

    def csv_path(self, name: str) -> Path:
        return self.root / f"{name}.csv"

    def save(
        self,
        trajectory: Trajectory,
        meta: RecordingMeta,
        *,
        stage: Optional[str] = None,
        **provenance,
    ) -> Path:
        path = self.csv_path(meta.name)
        path.parent.mkdir(parents=True, exist_ok=True)
        sensors = trajectory.sensor_count
        columns = ["t", "obj_x", "obj_y", "obj_z"]
        columns += [f"s{i}" for i in range(sensors)] + [f"c{i}" for i in range(sensors)]
        table = np.column_stack(
            [
                trajectory.t,
                trajectory.object_positions,
                trajectory.counts,
                trajectory.truth_capacitances,
            ]
        )
        fmt = [FLOAT_FMT] * 4 + ["%d"] * sensors + [FLOAT_FMT] * sensors
        np.savetxt(path, table, fmt=fmt, delimiter=",", header=",".join(columns), comments="")
        self.meta.save(meta, meta.name, stage=stage, **provenance)
        if stage is not None:
            write_provenance(path, stage=stage, **provenance)
        logger.debug(f"Wrote {trajectory.frame_count} frames to {path}")
        return path

    def load(self, name: str) -> Trajectory:
        path = self.csv_path(name)
        if not path.is_file():
            raise MissingArtifact(str(path))
        meta = self.meta.get_or_missing(name)
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        s = meta.sensor_count
        return Trajectory(
            t=table[:, 0],
            object_positions=table[:, 1:4],
            counts=np.rint(table[:, 4 : 4 + s]).astype(np.int64),
            truth_capacitances=table[:, 4 + s : 4 + 2 * s],
            frame_rate=meta.frame_rate,
        )

    def load_meta(self, name: str) -> RecordingMeta:
        return self.meta.get_or_missing(name)

    def names(self) -> List[str]:
        """Recording names present under the root, sorted."""
        return [p.stem for p in self.meta.list()]

    def load_all(self) -> List[Trajectory]:
        names = self.names()
        if not names:
            raise MissingArtifact(str(self.root / "*.csv"), "No recorded trajectories found")
        return [self.load(name) for name in names]
