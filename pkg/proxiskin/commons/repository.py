from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Generic, List, Mapping, Optional, Type, TypeVar

from loguru import logger
from pydantic import BaseModel, Field

from proxiskin.commons.digests import hash_config, hash_file
from proxiskin.commons.errors import MissingArtifact
from proxiskin.configs.settings import get_settings

SchemaType = TypeVar("SchemaType", bound=BaseModel)

SIDECAR_SUFFIX = ".provenance.json"


class ProvenanceSchema(BaseModel):
    """Everything needed to re-run the stage that produced an artifact."""

    stage: str
    artifact: str
    artifact_sha256: str
    config_hash: Optional[str] = None
    seeds: Dict[str, int] = Field(default_factory=dict)
    inputs: Dict[str, str] = Field(default_factory=dict)
    parameters: Dict[str, Any] = Field(default_factory=dict)
    tool_version: str
    created_at: str


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + SIDECAR_SUFFIX)


def write_provenance(
    path: Path,
    *,
    stage: str,
    config: Optional[BaseModel] = None,
    seeds: Optional[Mapping[str, int]] = None,
    inputs: Optional[List[Path]] = None,
    parameters: Optional[Mapping[str, Any]] = None,
) -> Path:
    """Write ``<artifact>.provenance.json`` next to an artifact."""
    path = Path(path)
    sidecar = ProvenanceSchema(
        stage=stage,
        artifact=path.name,
        artifact_sha256=hash_file(path),
        config_hash=hash_config(config) if config is not None else None,
        seeds=dict(seeds or {}),
        inputs={str(p): hash_file(p) for p in (inputs or [])},
        parameters=dict(parameters or {}),
        tool_version=get_settings().version,
        created_at=datetime.now(tz=timezone.utc).isoformat(),
    )
    out = sidecar_path(path)
    out.write_text(sidecar.model_dump_json(indent=2))
    return out


class BaseRepository(Generic[SchemaType]):
    """
    JSON artifact store for one schema type under a stage directory.
    """

    def __init__(self, model: Type[SchemaType], root: Path | str):
        self.model = model
        self.root = Path(root)

    def path_for(self, name: str) -> Path:
        if not name.endswith(".json"):
            name = f"{name}.json"
        return self.root / name

    def exists(self, name: str) -> bool:
        return self.path_for(name).is_file()

    def save(
        self,
        obj: SchemaType,
        name: str,
        *,
        stage: Optional[str] = None,
        **provenance: Any,
    ) -> Path:
        """
        Persist an artifact, optionally with its provenance sidecar.

        Args:
            obj: Schema instance to write
            name: File name (``.json`` appended when missing)
            stage: When given, a provenance sidecar is written for this stage
            **provenance: Forwarded to ``write_provenance``

        Returns:
            Path of the written artifact
        """
        path = self.path_for(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(obj.model_dump_json(indent=2))
        if stage is not None:
            write_provenance(path, stage=stage, **provenance)
        logger.debug(f"Wrote {self.model.__name__} to {path}")
        return path

    def get(self, name: str) -> Optional[SchemaType]:
        """Load an artifact, ``None`` when absent."""
        path = self.path_for(name)
        if not path.is_file():
            return None
        return self.model.model_validate_json(path.read_text())

    def get_or_missing(self, name: str) -> SchemaType:
        """Load an artifact or raise ``MissingArtifact`` with the expected path."""
        obj = self.get(name)
        if obj is None:
            raise MissingArtifact(str(self.path_for(name)))
        return obj

    def list(self, pattern: str = "*.json") -> List[Path]:
        """Artifact paths under the root, sidecars excluded, sorted by name."""
        if not self.root.is_dir():
            return []
        return sorted(
            p for p in self.root.glob(pattern) if not p.name.endswith(SIDECAR_SUFFIX)
        )
