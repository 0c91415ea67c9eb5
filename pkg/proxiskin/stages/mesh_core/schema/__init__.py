from proxiskin.stages.mesh_core.schema.design import DesignParams
from proxiskin.stages.mesh_core.schema.mesh import DermisShell, SurfaceMesh

__all__ = [
    "DesignParams",
    "DermisShell",
    "SurfaceMesh",
]
