import numpy as np

from proxiskin.commons.errors import InvalidParameter
from proxiskin.stages.mesh_core.schema import SurfaceMesh


def flat_patch(size: float = 0.1, divisions: int = 20) -> SurfaceMesh:
    """Square patch in the z=0 plane, corner at the origin, normals along +z."""
    if size <= 0.0 or divisions < 1:
        raise InvalidParameter("flat patch needs size > 0 and divisions >= 1")
    n = divisions + 1
    xs = np.linspace(0.0, size, n)
    gx, gy = np.meshgrid(xs, xs)
    vertices = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(n * n)])

    i, j = np.meshgrid(np.arange(divisions), np.arange(divisions))
    v00 = (j * n + i).ravel()
    v10 = v00 + 1
    v01 = v00 + n
    v11 = v01 + 1
    faces = np.vstack(
        [np.column_stack([v00, v10, v11]), np.column_stack([v00, v11, v01])]
    )
    return SurfaceMesh(vertices=vertices, faces=faces)
