from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from proxiskin.commons.repository import BaseRepository, write_provenance
from proxiskin.stages.characterize.schema import AreaRangeReport, CharacterizationReport

TABLE_COLUMNS = (
    "sensor_id",
    "area_m2",
    "wire_length_m",
    "max_snr_contact",
    "detection_range_m",
    "k",
    "w",
    "pearson_r",
)


class CharacterizationRepository:
    """report.json, the report.csv table and area_vs_range.json."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.reports = BaseRepository(CharacterizationReport, self.root)
        self.area_reports = BaseRepository(AreaRangeReport, self.root)

    def table(self, report: CharacterizationReport) -> np.ndarray:
        nan = float("nan")
        rows = []
        for s in report.sensors:
            rows.append(
                [
                    s.sensor_id,
                    s.area_m2,
                    s.wire_length_m,
                    s.max_snr_at_contact,
                    nan if s.detection_range_m is None else s.detection_range_m,
                    nan if s.fit is None else s.fit.k,
                    nan if s.fit is None else s.fit.w,
                    nan if s.fit is None else s.fit.pearson_r,
                ]
            )
        return np.asarray(rows, dtype=float).reshape(-1, len(TABLE_COLUMNS))

    def save(
        self,
        report: CharacterizationReport,
        area_report: Optional[AreaRangeReport] = None,
        *,
        stage: Optional[str] = None,
        **provenance: Any,
    ) -> Dict[str, Path]:
        paths = {"report": self.reports.save(report, "report")}
        csv = self.root / "report.csv"
        np.savetxt(
            csv,
            self.table(report),
            fmt=["%d"] + ["%.10g"] * (len(TABLE_COLUMNS) - 1),
            delimiter=",",
            header=",".join(TABLE_COLUMNS),
            comments="",
        )
        paths["table"] = csv
        if area_report is not None:
            paths["area_vs_range"] = self.area_reports.save(area_report, "area_vs_range")
        if stage is not None:
            for path in paths.values():
                write_provenance(path, stage=stage, **provenance)
        return paths

    def load(self) -> CharacterizationReport:
        return self.reports.get_or_missing("report")
