from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from proxiskin.commons.repository import BaseRepository, write_provenance
from proxiskin.stages.avoid_sim.schema import ScenarioLog, ScenarioSummary

LOG_COLUMNS = (
    "t",
    "des_x",
    "des_y",
    "des_z",
    "act_x",
    "act_y",
    "act_z",
    "speed",
    "n_obstacles",
    "min_distance",
    "clearance",
    "intrusion",
)


class ScenarioRepository:
    """Closed-loop run as log.csv plus summary.json."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.summaries = BaseRepository(ScenarioSummary, self.root)

    def log_path(self, prefix: str = "") -> Path:
        return self.root / f"{prefix}log.csv"

    def save(
        self,
        log: ScenarioLog,
        summary: ScenarioSummary,
        prefix: str = "",
        *,
        stage: Optional[str] = None,
        **provenance: Any,
    ) -> Dict[str, Path]:
        path = self.log_path(prefix)
        path.parent.mkdir(parents=True, exist_ok=True)
        table = np.column_stack(
            [
                log.t,
                log.desired,
                log.actual,
                log.speed,
                log.n_obstacles,
                log.min_distance,
                log.clearance,
                log.intrusion,
            ]
        )
        fmt = ["%.4f"] + ["%.9g"] * 7 + ["%d", "%.9g", "%.9g", "%d"]
        np.savetxt(path, table, fmt=fmt, delimiter=",", header=",".join(LOG_COLUMNS), comments="")
        paths = {"log": path, "summary": self.summaries.save(summary, f"{prefix}summary")}
        if stage is not None:
            for p in paths.values():
                write_provenance(p, stage=stage, **provenance)
        return paths

    def load_summary(self, prefix: str = "") -> ScenarioSummary:
        return self.summaries.get_or_missing(f"{prefix}summary")

    def load_log(self, prefix: str = "") -> ScenarioLog:
        table = np.loadtxt(self.log_path(prefix), delimiter=",", skiprows=1, ndmin=2)
        return ScenarioLog(
            t=table[:, 0],
            desired=table[:, 1:4],
            actual=table[:, 4:7],
            speed=table[:, 7],
            n_obstacles=np.rint(table[:, 8]).astype(np.int64),
            min_distance=table[:, 9],
            clearance=table[:, 10],
            intrusion=np.rint(table[:, 11]).astype(np.int64),
        )
