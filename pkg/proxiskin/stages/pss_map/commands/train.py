import numpy as np

from proxiskin.commons.context import RunContext
from proxiskin.stages.cap_physics.repository import FramesRepository
from proxiskin.stages.generation.repository import SkinRepository
from proxiskin.stages.generation.schema import SkinUnit
from proxiskin.stages.pss_map.repository import EnsembleRepository
from proxiskin.stages.pss_map.schema import Ensemble, PssDataset
from proxiskin.stages.pss_map.services import (
    calibrate_uncertainty,
    prepare_dataset,
    train_ensemble,
)


def load_dataset(ctx: RunContext) -> tuple[SkinUnit, PssDataset, list]:
    """Skin unit and the seeded whole-trajectory split of its recordings."""
    skins = SkinRepository(ctx.skin_dir)
    skin = skins.load()
    frames = FramesRepository(ctx.frames_dir)
    trajectories = frames.load_all()
    betas = np.array([c.beta for c in skin.circuits])
    dataset = prepare_dataset(trajectories, betas, skin.origin, ctx.config.dataset, ctx.seed("split"))
    inputs = [skins.skin_path()] + [frames.csv_path(n) for n in frames.names()]
    return skin, dataset, inputs


def cmd_train(ctx: RunContext) -> Ensemble:
    skin, dataset, inputs = load_dataset(ctx)
    ensemble = train_ensemble(
        dataset.train,
        ctx.config.ensemble,
        ctx.seed("train"),
        dataset.channel_scale,
        skin.origin,
        skin.link_frame,
    )
    ensemble = calibrate_uncertainty(ensemble, dataset.validation)
    EnsembleRepository(ctx.model_dir).save_ensemble(
        ensemble,
        stage="train",
        config=ctx.config,
        seeds={"split": ctx.seed("split"), "train": ctx.seed("train")},
        inputs=inputs,
    )
    cal = ensemble.calibration
    ctx.console.print(
        f"{len(ensemble.members)} members trained on {len(dataset.train)} frames; "
        f"calibration e_p = {cal.slope:.3f} sigma + {cal.intercept:.4f} (r = {cal.pearson_r:.3f})"
    )
    return ensemble
