import numpy as np
from loguru import logger

from proxiskin.commons.errors import DegenerateNormal, InvalidParameter
from proxiskin.stages.mesh_core.schema import DermisShell, SurfaceMesh

# |sum of incident normals| below this fraction of their total magnitude is degenerate
NORMAL_CANCELLATION = 1e-9


def mold_dermis(region: SurfaceMesh, thickness: float) -> DermisShell:
    """
    Extrude a surface patch outward along its area-weighted vertex normals.

    The outer surface shares the inner surface's vertex indexing and faces,
    so both caps keep the same face adjacency.

    Raises:
        InvalidParameter: empty region or thickness <= 0
        DegenerateNormal: incident face normals cancel at some vertex
    """
    if thickness <= 0.0:
        raise InvalidParameter(f"thickness must be positive, got {thickness}")
    if not region.face_count:
        raise InvalidParameter("cannot mold an empty region")

    summed, total = region.accumulated_normals()
    magnitude = np.linalg.norm(summed, axis=1)
    degenerate = magnitude <= NORMAL_CANCELLATION * total
    if degenerate.any():
        index = int(np.flatnonzero(degenerate)[0])
        raise DegenerateNormal(
            f"Vertex {index} has a near-zero normal",
            data={"vertices": np.flatnonzero(degenerate).tolist()},
        )
    normals = summed / magnitude[:, None]

    outer = SurfaceMesh(
        vertices=region.vertices + thickness * normals,
        faces=region.faces,
        weights=region.weights,
    )

    flipped = np.einsum("ij,ij->i", outer.face_cross(), region.face_cross()) <= 0.0
    if flipped.any():
        logger.warning(
            f"Extrusion self-intersects: {int(flipped.sum())} outer faces flipped "
            f"at thickness {thickness}"
        )

    shell = DermisShell(
        inner_mesh=region,
        outer_mesh=outer,
        normals=normals,
        thickness=thickness,
        boundary_loops=region.boundary_loops(),
    )
    logger.debug(
        f"Dermis: {region.vertex_count} vertices, {len(shell.boundary_loops)} rim loops"
    )
    return shell
