from loguru import logger

from proxiskin.commons.context import RunContext
from proxiskin.stages.characterize.repository import CharacterizationRepository
from proxiskin.stages.pss_map.commands.train import load_dataset
from proxiskin.stages.pss_map.repository import EnsembleRepository, MapRepository
from proxiskin.stages.pss_map.schema import PssGrid
from proxiskin.stages.pss_map.services import evaluate_on_test, map_pss


def cmd_map(ctx: RunContext) -> PssGrid:
    models = EnsembleRepository(ctx.model_dir)
    ensemble = models.load()
    skin, dataset, inputs = load_dataset(ctx)

    characterization = CharacterizationRepository(ctx.characterization_dir)
    if characterization.reports.exists("report"):
        ranges = characterization.load().detection_ranges
    else:
        logger.warning("No characterization report, every test frame counts as out of range")
        ranges = [None] * skin.sensor_count

    grid = map_pss(ensemble, ctx.config.grid, ctx.seed("map"))
    metrics = evaluate_on_test(
        ensemble, dataset.test, skin.electrodes, ranges, ctx.config.coupling.object_radius
    )
    MapRepository(ctx.map_dir).save(
        grid,
        metrics,
        stage="map",
        config=ctx.config,
        seeds={"map": ctx.seed("map"), "split": ctx.seed("split")},
        inputs=[models.path_for("ensemble"), *inputs],
    )
    ctx.console.print(
        f"PSS grid: {len(grid.counts)} occupied cells, {int(grid.usable.sum())} under "
        f"{grid.cutoff:g} m; test median error {metrics.median_error_m * 100:.1f} cm, "
        f"r(e_p, sigma_cal) = {metrics.pearson_error_sigma:.3f}"
    )
    return grid
