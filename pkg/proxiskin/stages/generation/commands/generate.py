from pathlib import Path
from typing import Optional

from rich.table import Table

from proxiskin.commons.context import RunContext
from proxiskin.commons.enums import MeshSource
from proxiskin.commons.errors import ConfigError
from proxiskin.stages.generation.repository import SkinRepository
from proxiskin.stages.generation.schema import GenerationReport
from proxiskin.stages.generation.services import generate_skin_unit, summarize
from proxiskin.stages.mesh_core.repository import MeshRepository
from proxiskin.stages.mesh_core.schema import SurfaceMesh
from proxiskin.stages.mesh_core.services import flat_patch


def load_base_mesh(ctx: RunContext, mesh_path: Optional[Path] = None) -> tuple[SurfaceMesh, list[Path]]:
    """Base mesh named on the command line, in the config, or the flat demo patch."""
    mesh_cfg = ctx.config.mesh
    path = mesh_path or (Path(mesh_cfg.path) if mesh_cfg.path else None)
    if path is not None:
        return MeshRepository(path.parent).load(path), [path]
    if mesh_cfg.source is MeshSource.FILE:
        raise ConfigError("mesh.source is 'file' but no mesh path was given")
    return flat_patch(mesh_cfg.size, mesh_cfg.divisions), []


def cmd_generate(ctx: RunContext, mesh_path: Optional[Path] = None) -> GenerationReport:
    mesh, inputs = load_base_mesh(ctx, mesh_path)
    seed = ctx.seed("generate")
    design = ctx.config.design.model_copy(update={"seed": seed})
    skin = generate_skin_unit(mesh, design, ctx.config.circuit)
    report = summarize(skin)
    SkinRepository(ctx.skin_dir).save(skin, report, **ctx.provenance("generate", inputs=inputs))

    table = Table(title=f"Skin unit: {report.sensor_count} sensors, {report.port_count} ports")
    for column in ("sensor", "radius (mm)", "wire (mm)", "R (MOhm)", "port"):
        table.add_column(column, justify="right")
    for s in report.sensors:
        table.add_row(
            str(s.id),
            f"{s.radius_m * 1e3:.2f}",
            f"{s.wire_length_m * 1e3:.1f}",
            f"{s.resistance_ohm / 1e6:.4f}",
            str(s.port_id),
        )
    ctx.console.print(table)
    ctx.console.print(f"total wire length {report.total_wire_length_m * 1e3:.1f} mm")
    return report
