import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from proxiskin.commons.errors import InvalidParameter
from proxiskin.stages.mesh_core.schema import SurfaceMesh
from proxiskin.stages.sensor_layout.schema import SensorPoints


def _uniform_surface_darts(
    surface: SurfaceMesh, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Area-weighted face choice, then a uniform point inside each chosen triangle."""
    areas = surface.face_areas()
    face_ids = rng.choice(surface.face_count, size=count, p=areas / areas.sum())
    r1, r2 = rng.random((2, count))
    s = np.sqrt(r1)
    bary = np.column_stack([1.0 - s, s * (1.0 - r2), s * r2])
    corners = surface.vertices[surface.faces[face_ids]]
    return np.einsum("nk,nkd->nd", bary, corners), face_ids


def poisson_disk_sample(
    surface: SurfaceMesh, r_min: float, seed: int, max_attempts: int = 10000
) -> SensorPoints:
    """
    Dart-throwing Poisson-disk sampling over a triangle mesh.

    ``max_attempts`` candidate darts are drawn up front; each is accepted in
    draw order when it lies at least ``r_min`` (Euclidean) from every point
    accepted before it.
    """
    if r_min <= 0.0:
        raise InvalidParameter(f"r_min must be positive, got {r_min}")
    if not surface.face_count:
        raise InvalidParameter("cannot sample an empty surface")

    rng = np.random.default_rng(seed)
    darts, face_ids = _uniform_surface_darts(surface, max_attempts, rng)

    accepted = []
    remaining = np.arange(max_attempts)
    while len(remaining):
        head = remaining[0]
        accepted.append(head)
        rest = remaining[1:]
        dist = np.linalg.norm(darts[rest] - darts[head], axis=1)
        remaining = rest[dist >= r_min]

    accepted = np.asarray(accepted, dtype=np.int64)
    logger.debug(f"Poisson-disk: {len(accepted)} points at r_min={r_min} (seed {seed})")
    return SensorPoints(points=darts[accepted].reshape(-1, 3), face_ids=face_ids[accepted])


def snap_to_surface(points: np.ndarray, surface: SurfaceMesh) -> SensorPoints:
    """
    Project hand-placed points onto the plane of the face with the nearest centroid.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    _, face_ids = cKDTree(surface.face_centroids()).query(points)
    face_ids = np.asarray(face_ids, dtype=np.int64)
    normals = surface.face_normals()[face_ids]
    anchors = surface.vertices[surface.faces[face_ids, 0]]
    offset = np.einsum("ij,ij->i", points - anchors, normals)
    return SensorPoints(points=points - offset[:, None] * normals, face_ids=face_ids)
