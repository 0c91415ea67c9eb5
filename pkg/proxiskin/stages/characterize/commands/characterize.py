from loguru import logger
from rich.table import Table

from proxiskin.commons.context import RunContext
from proxiskin.commons.errors import InsufficientSensors
from proxiskin.stages.cap_physics.repository import FramesRepository
from proxiskin.stages.characterize.repository import CharacterizationRepository
from proxiskin.stages.characterize.schema import CharacterizationReport
from proxiskin.stages.characterize.services import area_vs_range_report, characterize_skin
from proxiskin.stages.generation.repository import SkinRepository


def _fmt(value, scale: float = 1.0, pattern: str = ".3f") -> str:
    return "-" if value is None else format(value * scale, pattern)


def cmd_characterize(ctx: RunContext) -> CharacterizationReport:
    skins = SkinRepository(ctx.skin_dir)
    skin = skins.load()
    frames = FramesRepository(ctx.frames_dir)
    trajectories = frames.load_all()
    report = characterize_skin(trajectories, skin, ctx.config.coupling, ctx.config.characterize)

    area_report = None
    try:
        area_report = area_vs_range_report(report, skin.electrodes)
    except InsufficientSensors as exc:
        logger.warning(f"Area vs range report skipped: {exc.message}")

    inputs = [skins.skin_path()] + [frames.csv_path(n) for n in frames.names()]
    CharacterizationRepository(ctx.characterization_dir).save(
        report, area_report, stage="characterize", config=ctx.config, inputs=inputs
    )

    table = Table(title="Sensor characterization")
    for column in ("sensor", "area (mm2)", "max SNR", "w", "r", "range (cm)"):
        table.add_column(column, justify="right")
    for s in report.sensors:
        table.add_row(
            str(s.sensor_id),
            f"{s.area_m2 * 1e6:.1f}",
            f"{s.max_snr_at_contact:.1f}",
            _fmt(s.fit.w if s.fit else None),
            _fmt(s.fit.pearson_r if s.fit else None),
            _fmt(s.detection_range_m, 100.0, ".1f"),
        )
    ctx.console.print(table)
    if area_report is not None:
        ctx.console.print(f"area vs detection range: r = {area_report.pearson_r:.3f}")
    return report
