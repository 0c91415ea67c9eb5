from pathlib import Path
from typing import Annotated, Any, Callable, Optional

import typer
from loguru import logger
from rich.console import Console

from proxiskin.commons.context import RunContext
from proxiskin.commons.errors import handle_exception
from proxiskin.commons.instrumentation import stage_timer
from proxiskin.configs.logger import setup_logger
from proxiskin.configs.pipeline import load_pipeline_config
from proxiskin.configs.settings import get_settings
from proxiskin.stages.avoid_sim.commands import cmd_avoid
from proxiskin.stages.cap_physics.commands import cmd_simulate
from proxiskin.stages.characterize.commands import cmd_characterize
from proxiskin.stages.generation.commands import cmd_generate
from proxiskin.stages.pss_map.commands import cmd_map, cmd_train

settings = get_settings()

app = typer.Typer(
    name=settings.project_name,
    help=settings.description,
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)

ConfigOption = Annotated[
    Optional[Path], typer.Option("--config", "-c", help="Pipeline config JSON")
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", help="Master seed, overrides every stage seed")
]
OutOption = Annotated[Optional[Path], typer.Option("--out", "-o", help="Artifact directory")]
QuietOption = Annotated[bool, typer.Option("--quiet", "-q", help="Only warnings and errors")]


def _context(config: Optional[Path], seed: Optional[int], out: Optional[Path], quiet: bool) -> RunContext:
    setup_logger(debug_mode=settings.debug, quiet=quiet)
    cfg = load_pipeline_config(config or Path(settings.config_path), seed)
    return RunContext(
        config=cfg,
        out=out or Path(settings.output_dir),
        console=Console(quiet=quiet),
    )


def _run(
    stages: list[tuple[str, Callable[..., Any]]],
    config: Optional[Path],
    seed: Optional[int],
    out: Optional[Path],
    quiet: bool,
) -> None:
    """Run stage callables in order, mapping the first failure to its exit code."""
    stage = "config"
    try:
        ctx = _context(config, seed, out, quiet)
        for stage, fn in stages:
            with stage_timer(stage):
                fn(ctx)
    except Exception as exc:
        raise typer.Exit(code=handle_exception(stage, exc))
    logger.debug(f"Artifacts under {ctx.out}")


@app.command()
def generate(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    quiet: QuietOption = False,
    mesh: Annotated[Optional[Path], typer.Option(help="Base mesh (.obj or .json)")] = None,
) -> None:
    """Generate a skin unit: dermis, sensors, routed wires."""
    _run([("generate", lambda ctx: cmd_generate(ctx, mesh))], config, seed, out, quiet)


@app.command()
def simulate(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    quiet: QuietOption = False,
    trajectory: Annotated[
        Optional[Path], typer.Option(help="Object waypoints (.csv t,x,y,z or .json), replaces the protocol")
    ] = None,
) -> None:
    """Simulate approach recordings over the generated skin."""
    _run([("simulate", lambda ctx: cmd_simulate(ctx, trajectory))], config, seed, out, quiet)


@app.command()
def characterize(
    config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, quiet: QuietOption = False
) -> None:
    """Fit distance laws and detection ranges per sensor."""
    _run([("characterize", cmd_characterize)], config, seed, out, quiet)


@app.command()
def train(
    config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, quiet: QuietOption = False
) -> None:
    """Train and calibrate the position ensemble."""
    _run([("train", cmd_train)], config, seed, out, quiet)


@app.command("map")
def map_command(
    config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, quiet: QuietOption = False
) -> None:
    """Project ensemble uncertainty onto a grid and score the test split."""
    _run([("map", cmd_map)], config, seed, out, quiet)


@app.command()
def avoid(
    config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, quiet: QuietOption = False
) -> None:
    """Run the circle-tracing avoidance scenario and its blind ablation."""
    _run([("avoid", cmd_avoid)], config, seed, out, quiet)


@app.command()
def pipeline(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    quiet: QuietOption = False,
    mesh: Annotated[Optional[Path], typer.Option(help="Base mesh (.obj or .json)")] = None,
) -> None:
    """Every stage in order: generate, simulate, characterize, train, map, avoid."""
    _run(
        [
            ("generate", lambda ctx: cmd_generate(ctx, mesh)),
            ("simulate", cmd_simulate),
            ("characterize", cmd_characterize),
            ("train", cmd_train),
            ("map", cmd_map),
            ("avoid", cmd_avoid),
        ],
        config,
        seed,
        out,
        quiet,
    )


@app.command()
def version() -> None:
    """Print the tool version."""
    typer.echo(f"{settings.project_name} {settings.version}")


def main() -> None:
    app()
