from pathlib import Path

import numpy as np
import trimesh
from loguru import logger

from proxiskin.commons.errors import MissingArtifact
from proxiskin.commons.repository import BaseRepository
from proxiskin.stages.mesh_core.schema import SurfaceMesh


class MeshRepository(BaseRepository[SurfaceMesh]):
    """Surface meshes as canonical JSON, with OBJ import/export for interchange."""

    def __init__(self, root: Path | str):
        super().__init__(SurfaceMesh, root)

    def load(self, path: Path | str) -> SurfaceMesh:
        """
        Load a mesh from ``.json`` (with weights) or ``.obj`` (weights default to 1).
        """
        path = Path(path)
        if not path.is_file():
            raise MissingArtifact(str(path))
        if path.suffix.lower() == ".json":
            return SurfaceMesh.model_validate_json(path.read_text())

        loaded = trimesh.load(path, process=False, force="mesh")
        logger.debug(f"Imported {len(loaded.faces)} faces from {path}")
        return SurfaceMesh(
            vertices=np.asarray(loaded.vertices, dtype=float),
            faces=np.asarray(loaded.faces, dtype=np.int64),
        )

    def export_obj(self, mesh: SurfaceMesh, name: str) -> Path:
        """Geometry-only OBJ export."""
        path = self.root / (name if name.endswith(".obj") else f"{name}.obj")
        path.parent.mkdir(parents=True, exist_ok=True)
        tm = trimesh.Trimesh(vertices=mesh.vertices, faces=mesh.faces, process=False)
        path.write_text(tm.export(file_type="obj", include_normals=False))
        return path
