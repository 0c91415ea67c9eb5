import json
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import Field

from proxiskin.commons.enums import MeshSource
from proxiskin.commons.errors import ConfigError, MissingArtifact
from proxiskin.commons.schemas import ConfigSchema
from proxiskin.stages.avoid_sim.schema import ControllerConfig, ScenarioConfig
from proxiskin.stages.cap_physics.schema import (
    CircuitParams,
    CouplingModel,
    EnvironmentModel,
    ProtocolConfig,
)
from proxiskin.stages.characterize.schema import CharacterizeConfig
from proxiskin.stages.mesh_core.schema import DesignParams
from proxiskin.stages.pss_map.schema import DatasetConfig, EnsembleConfig, GridConfig

# order fixes the derived seed of every stage; append only
STAGES = ("generate", "simulate", "split", "train", "map", "avoid")


class MeshConfig(ConfigSchema):
    source: MeshSource = MeshSource.FLAT_PATCH
    path: Optional[str] = Field(default=None, description="OBJ or JSON mesh when source is file")
    size: float = Field(default=0.1, gt=0.0, description="Flat patch edge length (m)")
    divisions: int = Field(default=20, ge=1)


class SeedConfig(ConfigSchema):
    """Master seed plus optional explicit per-stage seeds."""

    master: int = Field(default=0, ge=0)
    generate: Optional[int] = Field(default=None, ge=0)
    simulate: Optional[int] = Field(default=None, ge=0)
    split: Optional[int] = Field(default=None, ge=0)
    train: Optional[int] = Field(default=None, ge=0)
    map: Optional[int] = Field(default=None, ge=0)
    avoid: Optional[int] = Field(default=None, ge=0)

    def for_stage(self, stage: str) -> int:
        explicit = getattr(self, stage)
        if explicit is not None:
            return int(explicit)
        entropy = np.random.SeedSequence([self.master, STAGES.index(stage)])
        return int(entropy.generate_state(1)[0])

    def derive(self, stage: str, *keys: int) -> int:
        """Sub-seed of a stage, e.g. one per simulated trajectory."""
        return int(np.random.SeedSequence([self.for_stage(stage), *keys]).generate_state(1)[0])

    def resolved(self) -> dict[str, int]:
        return {stage: self.for_stage(stage) for stage in STAGES}


class PipelineConfig(ConfigSchema):
    """Every parameter of a reproducible run, one section per stage."""

    schema_version: Literal[1] = 1
    name: str = "proxiskin"
    mesh: MeshConfig = Field(default_factory=MeshConfig)
    design: DesignParams = Field(default_factory=DesignParams)
    circuit: CircuitParams = Field(default_factory=CircuitParams)
    coupling: CouplingModel = Field(default_factory=CouplingModel)
    environment: EnvironmentModel = Field(default_factory=EnvironmentModel)
    protocol: ProtocolConfig = Field(default_factory=ProtocolConfig)
    characterize: CharacterizeConfig = Field(default_factory=CharacterizeConfig)
    dataset: DatasetConfig = Field(default_factory=DatasetConfig)
    ensemble: EnsembleConfig = Field(default_factory=EnsembleConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    controller: ControllerConfig = Field(default_factory=ControllerConfig)
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    seeds: SeedConfig = Field(default_factory=SeedConfig)

    def with_master_seed(self, seed: Optional[int]) -> "PipelineConfig":
        """Copy whose every stage seed derives from ``seed``; unchanged when ``seed`` is None."""
        if seed is None:
            return self
        return self.model_copy(update={"seeds": SeedConfig(master=seed)})


def load_pipeline_config(path: Path | str, seed: Optional[int] = None) -> PipelineConfig:
    """
    Read and validate a pipeline config.

    Raises:
        MissingArtifact: no file at ``path``
        ConfigError: not a version-1 config
        pydantic.ValidationError: unknown or out-of-range fields
    """
    path = Path(path)
    if not path.is_file():
        raise MissingArtifact(str(path), f"Config file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}", data={"path": str(path)}) from exc
    if not isinstance(raw, dict) or "schema_version" not in raw:
        raise ConfigError(f"{path} has no top-level schema_version", data={"path": str(path)})
    return PipelineConfig.model_validate(raw).with_master_seed(seed)
