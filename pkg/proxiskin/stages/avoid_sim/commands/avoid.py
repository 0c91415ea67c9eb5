from rich.table import Table

from proxiskin.commons.context import RunContext
from proxiskin.stages.avoid_sim.repository import ScenarioRepository
from proxiskin.stages.avoid_sim.schema import ScenarioSummary
from proxiskin.stages.avoid_sim.services import characterize_ring, run_circle_scenario
from proxiskin.stages.characterize.repository import CharacterizationRepository


def _value(x, scale: float = 1.0) -> str:
    return "-" if x is None else f"{x * scale:.1f}"


def cmd_avoid(ctx: RunContext) -> tuple[ScenarioSummary, ScenarioSummary]:
    """
    Characterize the end-effector ring, then run the circle scenario with the
    configured controller paired with a blind run, both on the ring's fits.
    """
    cfg = ctx.config
    seed = ctx.seed("avoid")
    ring = characterize_ring(
        cfg.scenario, seed, cfg.coupling, cfg.environment, cfg.circuit, cfg.protocol, cfg.characterize
    )
    CharacterizationRepository(ctx.avoid_dir / "ring").save(ring, **ctx.provenance("avoid"))
    fits = [s.fit for s in ring.sensors]

    repo = ScenarioRepository(ctx.avoid_dir)
    summaries = []
    for prefix, avoidance in (("", cfg.scenario.avoidance), ("ablation_", False)):
        scenario = cfg.scenario.model_copy(update={"avoidance": avoidance})
        log, summary = run_circle_scenario(
            scenario, cfg.controller, seed, cfg.coupling, cfg.environment, cfg.circuit, fits=fits
        )
        repo.save(log, summary, prefix, **ctx.provenance("avoid", parameters={"avoidance": avoidance}))
        summaries.append(summary)

    table = Table(title="Circle scenario")
    for column in ("run", "min clearance (mm)", "min speed (mm/s)", "post-removal dev (mm)"):
        table.add_column(column, justify="right")
    for name, s in zip(("controller", "ablation"), summaries):
        table.add_row(
            name,
            _value(s.min_clearance_m, 1e3),
            _value(s.min_speed_during_intrusion, 1e3),
            _value(s.post_removal_deviation_m, 1e3),
        )
    ctx.console.print(table)
    ctx.console.print(
        f"cruise speed {summaries[0].cruise_speed * 1e3:.1f} mm/s, "
        f"{summaries[0].fitted_sensors}/{cfg.scenario.ring_sensors} ring sensors fitted"
    )
    return summaries[0], summaries[1]
