from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import trimesh
from loguru import logger
from pydantic import TypeAdapter

from proxiskin.commons.repository import BaseRepository, write_provenance
from proxiskin.stages.generation.schema import GenerationReport, SkinUnit
from proxiskin.stages.mesh_core.repository import MeshRepository
from proxiskin.stages.sensor_layout.schema import Electrode
from proxiskin.stages.wire_router.schema import TubedWire, WirePath

_ELECTRODES = TypeAdapter(List[Electrode])
_WIRES = TypeAdapter(List[WirePath])

# tube cross-section resolution of exported wires
TUBE_SECTIONS = 8


def tubes_to_trimesh(tubes: List[TubedWire]) -> trimesh.Trimesh:
    """One cylinder per centerline segment, concatenated."""
    parts = []
    for tube in tubes:
        line = tube.centerline.reshape(-1, 3)
        for a, b in zip(line[:-1], line[1:]):
            if np.linalg.norm(b - a) <= 0.0:
                continue
            parts.append(
                trimesh.creation.cylinder(
                    radius=tube.radius, segment=np.vstack([a, b]), sections=TUBE_SECTIONS
                )
            )
    if not parts:
        return trimesh.Trimesh()
    return trimesh.util.concatenate(parts)


class SkinRepository:
    """
    Skin-unit bundle directory: dermis.obj/json, electrodes.json, wires.json,
    wires.obj, skin_unit.json and report.json.
    """

    SKIN_FILE = "skin_unit"

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.skins = BaseRepository(SkinUnit, self.root)
        self.reports = BaseRepository(GenerationReport, self.root)
        self.meshes = MeshRepository(self.root)

    def _write(self, name: str, content: str | bytes) -> Path:
        path = self.root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, bytes):
            path.write_bytes(content)
        else:
            path.write_text(content)
        return path

    def save(
        self,
        skin: SkinUnit,
        report: GenerationReport,
        *,
        stage: Optional[str] = None,
        **provenance: Any,
    ) -> Dict[str, Path]:
        paths = {
            "skin_unit": self.skins.path_for(self.SKIN_FILE),
            "report": self.reports.path_for("report"),
        }
        self.skins.save(skin, self.SKIN_FILE)
        self.reports.save(report, "report")
        paths["dermis_json"] = self._write("dermis.json", skin.dermis.model_dump_json(indent=2))
        paths["dermis_obj"] = self.meshes.export_obj(skin.dermis.shell_mesh(), "dermis")
        paths["electrodes"] = self._write("electrodes.json", _ELECTRODES.dump_json(skin.electrodes, indent=2))
        paths["wires"] = self._write("wires.json", _WIRES.dump_json(skin.wires, indent=2))
        paths["wires_obj"] = self._write(
            "wires.obj", tubes_to_trimesh(skin.tubes).export(file_type="obj", include_normals=False)
        )
        if stage is not None:
            for path in paths.values():
                write_provenance(path, stage=stage, **provenance)
        logger.debug(f"Wrote skin bundle to {self.root}")
        return paths

    def skin_path(self) -> Path:
        return self.skins.path_for(self.SKIN_FILE)

    def load(self) -> SkinUnit:
        return self.skins.get_or_missing(self.SKIN_FILE)

    def load_electrodes(self) -> List[Electrode]:
        path = self.root / "electrodes.json"
        return _ELECTRODES.validate_json(path.read_bytes())
