from pathlib import Path
from typing import List, Optional

from proxiskin.commons.context import RunContext
from proxiskin.stages.cap_physics.repository import FramesRepository, PathRepository
from proxiskin.stages.cap_physics.schema import ObjectPath, RecordingMeta, Trajectory
from proxiskin.stages.cap_physics.services import (
    SkinSensorModel,
    approach_protocol,
    simulate_trajectory,
)
from proxiskin.stages.generation.repository import SkinRepository


def cmd_simulate(ctx: RunContext, trajectory_path: Optional[Path] = None) -> List[Trajectory]:
    """
    Record approach runs over the generated skin.

    Without ``trajectory_path`` the seeded approach protocol is run
    ``dataset.trajectories`` times. With it, the object follows the waypoints
    of that CSV or JSON file once.
    """
    cfg = ctx.config
    skins = SkinRepository(ctx.skin_dir)
    skin = skins.load()
    model = SkinSensorModel.from_skin(skin, cfg.coupling, cfg.environment)
    frames = FramesRepository(ctx.frames_dir)
    inputs = [skins.skin_path()]

    runs: List[tuple[str, ObjectPath, int, dict]] = []
    if trajectory_path is not None:
        path = PathRepository().load(trajectory_path)
        noise_seed = cfg.seeds.derive("simulate", 0, 1)
        runs.append((f"traj_{Path(trajectory_path).stem}", path, noise_seed, {"noise_seed": noise_seed}))
        inputs.append(Path(trajectory_path))
    else:
        for index in range(cfg.dataset.trajectories):
            path_seed = cfg.seeds.derive("simulate", index, 0)
            noise_seed = cfg.seeds.derive("simulate", index, 1)
            path = approach_protocol(skin.electrodes, cfg.coupling.object_radius, path_seed, cfg.protocol)
            parameters = {"trajectory": index, "path_seed": path_seed, "noise_seed": noise_seed}
            runs.append((f"traj_{index:02d}", path, noise_seed, parameters))

    trajectories = []
    for name, path, noise_seed, parameters in runs:
        trajectory = simulate_trajectory(model, path, noise_seed, cfg.protocol.frame_rate)
        meta = RecordingMeta(
            name=name,
            seed=noise_seed,
            frame_rate=trajectory.frame_rate,
            sensor_count=trajectory.sensor_count,
            frame_count=trajectory.frame_count,
            circuits=list(skin.circuits),
            environment=cfg.environment,
            coupling=cfg.coupling,
        )
        frames.save(trajectory, meta, **ctx.provenance("simulate", inputs=inputs, parameters=parameters))
        trajectories.append(trajectory)
    ctx.console.print(
        f"{len(trajectories)} trajectories, {sum(t.frame_count for t in trajectories)} frames "
        f"at {cfg.protocol.frame_rate:g} Hz"
    )
    return trajectories
