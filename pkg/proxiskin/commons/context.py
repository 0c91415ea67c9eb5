from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict

from rich.console import Console

from proxiskin.configs.pipeline import PipelineConfig


@dataclass(frozen=True)
class RunContext:
    """Config and artifact layout shared by the stage commands of one invocation."""

    config: PipelineConfig
    out: Path
    console: Console

    @property
    def skin_dir(self) -> Path:
        return self.out / "skin"

    @property
    def frames_dir(self) -> Path:
        return self.out / "frames"

    @property
    def characterization_dir(self) -> Path:
        return self.out / "characterization"

    @property
    def model_dir(self) -> Path:
        return self.out / "model"

    @property
    def map_dir(self) -> Path:
        return self.out / "map"

    @property
    def avoid_dir(self) -> Path:
        return self.out / "avoid"

    def seed(self, stage: str) -> int:
        return self.config.seeds.for_stage(stage)

    def provenance(self, stage: str, **extra: Any) -> Dict[str, Any]:
        """Keyword arguments for a repository ``save`` call of ``stage``."""
        return {"stage": stage, "config": self.config, "seeds": {stage: self.seed(stage)}, **extra}
