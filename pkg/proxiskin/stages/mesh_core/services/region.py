import numpy as np
from loguru import logger

from proxiskin.commons.errors import EmptyRegion, InvalidParameter
from proxiskin.stages.mesh_core.schema import SurfaceMesh


def extract_weighted_region(mesh: SurfaceMesh, threshold: float = 0.5) -> SurfaceMesh:
    """
    Keep the faces whose three vertices are all weighted at or above ``threshold``.

    Args:
        mesh: Source surface with heat-map weights
        threshold: Inclusion weight, in (0, 1]

    Returns:
        Compacted mesh; vertex order follows the original indices

    Raises:
        InvalidParameter: threshold outside (0, 1]
        EmptyRegion: no face survives
    """
    if not 0.0 < threshold <= 1.0:
        raise InvalidParameter(f"threshold must lie in (0, 1], got {threshold}")

    keep = (mesh.weights[mesh.faces] >= threshold).all(axis=1)
    faces = mesh.faces[keep]
    if not len(faces):
        raise EmptyRegion(f"No face has all vertex weights >= {threshold}")

    used, remapped = np.unique(faces, return_inverse=True)
    logger.debug(f"Weighted region keeps {len(faces)}/{mesh.face_count} faces, {len(used)} vertices")
    return SurfaceMesh(
        vertices=mesh.vertices[used],
        faces=remapped.reshape(-1, 3),
        weights=mesh.weights[used],
    )
