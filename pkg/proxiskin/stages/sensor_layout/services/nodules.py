from typing import List

import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from proxiskin.commons.errors import DepthExceedsThickness, InvalidParameter
from proxiskin.commons.geometry import frame_from_normal
from proxiskin.stages.mesh_core.schema import DermisShell
from proxiskin.stages.sensor_layout.schema import Electrode, SensorPoints


def nearest_neighbor_distances(points: np.ndarray) -> np.ndarray:
    """Distance from each point to its closest other point, ``inf`` when alone."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(points) < 2:
        return np.full(len(points), np.inf)
    dist, _ = cKDTree(points).query(points, k=2)
    return dist[:, 1]


def place_nodules(
    points: SensorPoints,
    dermis: DermisShell,
    radius_scale: float = 0.4,
    depth: float = 0.001,
    min_radius: float = 0.005,
    max_radius: float = 0.014,
    link_frame: str = "link0",
) -> List[Electrode]:
    """
    Instantiate one electrode per sensor point on the outer dermis surface.

    The radius scales with the distance to the closest neighboring point,
    clamped to [min_radius, max_radius]; an isolated point gets max_radius.
    The top face is inset ``depth`` below the outer surface along the face normal.

    Raises:
        InvalidParameter: radius_scale outside (0, 0.5] or inverted radius bounds
        DepthExceedsThickness: depth >= dermis thickness
    """
    if not 0.0 < radius_scale <= 0.5:
        raise InvalidParameter(f"radius_scale must lie in (0, 0.5], got {radius_scale}")
    if not 0.0 < min_radius <= max_radius:
        raise InvalidParameter("need 0 < min_radius <= max_radius")
    if depth >= dermis.thickness:
        raise DepthExceedsThickness(
            f"Nodule depth {depth} must stay inside dermis thickness {dermis.thickness}"
        )

    sites = points.points.reshape(-1, 3)
    nn = nearest_neighbor_distances(sites)
    radii = np.where(np.isfinite(nn), np.clip(radius_scale * nn, min_radius, max_radius), max_radius)
    normals = dermis.outer_mesh.face_normals()[points.face_ids]
    centers = sites - depth * normals

    if len(sites) > 1:
        tree = cKDTree(sites)
        for i, j in sorted(tree.query_pairs(2.0 * max_radius)):
            if radii[i] + radii[j] > np.linalg.norm(sites[i] - sites[j]) + 1e-12:
                logger.warning(
                    f"Nodules {i} and {j} overlap after clamping to min_radius {min_radius}"
                )

    electrodes = [
        Electrode(
            id=i,
            center=centers[i],
            normal=normals[i],
            radius=float(radii[i]),
            depth=depth,
            area=float(np.pi * radii[i] ** 2),
            link_frame=link_frame,
            local_pose=frame_from_normal(centers[i], normals[i]),
        )
        for i in range(len(sites))
    ]
    logger.info(
        f"Placed {len(electrodes)} nodules, radii {radii.min():.4f}-{radii.max():.4f} m"
        if electrodes
        else "Placed 0 nodules"
    )
    return electrodes
