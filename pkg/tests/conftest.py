from pathlib import Path

import numpy as np
import pytest

from proxiskin.commons.geometry import frame_from_normal
from proxiskin.configs.pipeline import PipelineConfig, load_pipeline_config
from proxiskin.stages.cap_physics.schema import ProtocolConfig, Trajectory
from proxiskin.stages.cap_physics.services import (
    SkinSensorModel,
    approach_protocol,
    simulate_trajectory,
)
from proxiskin.stages.generation.schema import SkinUnit
from proxiskin.stages.generation.services import generate_skin_unit
from proxiskin.stages.mesh_core.services import flat_patch
from proxiskin.stages.sensor_layout.schema import Electrode

ROOT = Path(__file__).resolve().parents[1]
DEMO_CONFIG = ROOT / "demo" / "config.json"

# recordings simulated once per session for the analysis stages
SESSION_TRAJECTORIES = 4


def make_electrode(
    id: int = 0,
    center=(0.0, 0.0, 0.0),
    normal=(0.0, 0.0, 1.0),
    radius: float = 0.01,
    depth: float = 0.0,
    link_frame: str = "link0",
) -> Electrode:
    center = np.asarray(center, dtype=float)
    normal = np.asarray(normal, dtype=float)
    normal = normal / np.linalg.norm(normal)
    return Electrode(
        id=id,
        center=center,
        normal=normal,
        radius=radius,
        depth=depth,
        area=float(np.pi * radius**2),
        link_frame=link_frame,
        local_pose=frame_from_normal(center, normal),
    )


def make_trajectory(positions: np.ndarray, counts: np.ndarray, frame_rate: float = 20.0) -> Trajectory:
    positions = np.asarray(positions, dtype=float).reshape(-1, 3)
    counts = np.asarray(counts, dtype=np.int64).reshape(len(positions), -1)
    return Trajectory(
        t=np.arange(len(positions)) / frame_rate,
        counts=counts,
        object_positions=positions,
        truth_capacitances=np.zeros(counts.shape),
        frame_rate=frame_rate,
    )


@pytest.fixture(scope="session")
def demo_config() -> PipelineConfig:
    return load_pipeline_config(DEMO_CONFIG)


@pytest.fixture(scope="session")
def demo_skin(demo_config: PipelineConfig) -> SkinUnit:
    mesh = flat_patch(demo_config.mesh.size, demo_config.mesh.divisions)
    return generate_skin_unit(mesh, demo_config.design, demo_config.circuit)


@pytest.fixture(scope="session")
def demo_model(demo_config: PipelineConfig, demo_skin: SkinUnit) -> SkinSensorModel:
    return SkinSensorModel.from_skin(demo_skin, demo_config.coupling, demo_config.environment)


@pytest.fixture(scope="session")
def demo_trajectories(
    demo_config: PipelineConfig, demo_skin: SkinUnit, demo_model: SkinSensorModel
) -> list[Trajectory]:
    protocol: ProtocolConfig = demo_config.protocol
    trajectories = []
    for index in range(SESSION_TRAJECTORIES):
        path = approach_protocol(
            demo_skin.electrodes, demo_config.coupling.object_radius, 100 + index, protocol
        )
        trajectories.append(simulate_trajectory(demo_model, path, 200 + index, protocol.frame_rate))
    return trajectories
