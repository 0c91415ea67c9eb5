from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from proxiskin.commons.repository import BaseRepository, write_provenance
from proxiskin.stages.pss_map.schema import Ensemble, PssGrid, PssMetrics

ENSEMBLE_FILE = "ensemble"
GRID_COLUMNS = ("x", "y", "z", "mean_sigma", "count")


class EnsembleRepository(BaseRepository[Ensemble]):
    """Trained ensemble as one JSON weight archive, config and seeds embedded."""

    def __init__(self, root: Path | str):
        super().__init__(Ensemble, root)

    def save_ensemble(self, ensemble: Ensemble, **provenance: Any) -> Path:
        return self.save(ensemble, ENSEMBLE_FILE, **provenance)

    def load(self) -> Ensemble:
        return self.get_or_missing(ENSEMBLE_FILE)


class MapRepository:
    """pss_grid.json, the pss_grid.csv point table and metrics.json."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.grids = BaseRepository(PssGrid, self.root)
        self.metrics = BaseRepository(PssMetrics, self.root)

    def save(
        self,
        grid: PssGrid,
        metrics: Optional[PssMetrics] = None,
        *,
        stage: Optional[str] = None,
        **provenance: Any,
    ) -> Dict[str, Path]:
        paths = {"grid": self.grids.save(grid, "pss_grid")}
        csv = self.root / "pss_grid.csv"
        table = np.column_stack([grid.positions, grid.mean_sigma, grid.counts])
        np.savetxt(
            csv,
            table.reshape(-1, len(GRID_COLUMNS)),
            fmt=["%.6f"] * 3 + ["%.10g", "%d"],
            delimiter=",",
            header=",".join(GRID_COLUMNS),
            comments="",
        )
        paths["table"] = csv
        if metrics is not None:
            paths["metrics"] = self.metrics.save(metrics, "metrics")
        if stage is not None:
            for path in paths.values():
                write_provenance(path, stage=stage, **provenance)
        return paths

    def load_grid(self) -> PssGrid:
        return self.grids.get_or_missing("pss_grid")

    def load_metrics(self) -> PssMetrics:
        return self.metrics.get_or_missing("metrics")
