"""Small geometry kernel shared by the stages: rigid transforms and splines."""

import numpy as np
from scipy.spatial.transform import Rotation

# uniform Catmull-Rom basis, P(t) = [1 t t^2 t^3] @ M @ [P0 P1 P2 P3]
_CATMULL_ROM = 0.5 * np.array(
    [
        [0.0, 2.0, 0.0, 0.0],
        [-1.0, 0.0, 1.0, 0.0],
        [2.0, -5.0, 4.0, -1.0],
        [-1.0, 3.0, -3.0, 1.0],
    ]
)


def rigid_transform(rotation: np.ndarray, translation: np.ndarray) -> np.ndarray:
    """4x4 homogeneous transform from a 3x3 rotation and a translation."""
    T = np.eye(4)
    T[:3, :3] = rotation
    T[:3, 3] = translation
    return T


def translation(offset: np.ndarray) -> np.ndarray:
    return rigid_transform(np.eye(3), np.asarray(offset, dtype=float))


def axis_rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    """4x4 rotation of ``angle`` radians about a unit ``axis``."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    R = Rotation.from_rotvec(axis * angle).as_matrix()
    return rigid_transform(R, np.zeros(3))


def invert_transform(T: np.ndarray) -> np.ndarray:
    R = T[:3, :3]
    t = T[:3, 3]
    return rigid_transform(R.T, -R.T @ t)


def apply_transform(T: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Transform (..., 3) points."""
    points = np.asarray(points, dtype=float)
    return points @ T[:3, :3].T + T[:3, 3]


def frame_from_normal(origin: np.ndarray, normal: np.ndarray) -> np.ndarray:
    """Right-handed frame at ``origin`` whose z axis is ``normal``."""
    z = np.asarray(normal, dtype=float)
    z = z / np.linalg.norm(z)
    # seed with the world axis least aligned with z
    seed = np.eye(3)[int(np.argmin(np.abs(z)))]
    x = np.cross(seed, z)
    x /= np.linalg.norm(x)
    y = np.cross(z, x)
    return rigid_transform(np.column_stack([x, y, z]), origin)


def polyline_length(points: np.ndarray) -> float:
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return 0.0
    return float(np.linalg.norm(np.diff(points, axis=0), axis=1).sum())


def _evaluate_segments(controls: np.ndarray, samples_per_segment: int) -> np.ndarray:
    """
    Evaluate uniform Catmull-Rom segments.

    Args:
        controls: (S, 4, 3) control quadruples, one per segment
        samples_per_segment: samples at t = j / samples_per_segment, j < samples_per_segment

    Returns:
        (S * samples_per_segment, 3) points, segment-major
    """
    t = np.arange(samples_per_segment, dtype=float) / samples_per_segment
    powers = np.stack([np.ones_like(t), t, t * t, t * t * t], axis=1)
    weights = powers @ _CATMULL_ROM
    out = np.einsum("tk,skd->std", weights, controls)
    return out.reshape(-1, controls.shape[-1])


def catmull_rom_closed(points: np.ndarray, samples_per_segment: int) -> np.ndarray:
    """
    Closed uniform Catmull-Rom curve through every point of a loop.

    The returned polyline starts at ``points[0]`` and ends with a repeat of it.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    idx = np.arange(n)
    controls = np.stack(
        [points[(idx - 1) % n], points[idx], points[(idx + 1) % n], points[(idx + 2) % n]],
        axis=1,
    )
    curve = _evaluate_segments(controls, samples_per_segment)
    return np.vstack([curve, points[:1]])


def catmull_rom_open(points: np.ndarray, samples_per_segment: int) -> np.ndarray:
    """
    Open uniform Catmull-Rom curve through every point, ends extrapolated linearly.
    """
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return points.copy()
    head = 2.0 * points[0] - points[1]
    tail = 2.0 * points[-1] - points[-2]
    padded = np.vstack([head, points, tail])
    n = len(points)
    idx = np.arange(n - 1)
    controls = np.stack(
        [padded[idx], padded[idx + 1], padded[idx + 2], padded[idx + 3]], axis=1
    )
    curve = _evaluate_segments(controls, samples_per_segment)
    return np.vstack([curve, points[-1:]])


def resample_by_arc_length(polyline: np.ndarray, count: int) -> np.ndarray:
    """
    ``count`` points at equal arc-length spacing starting at arc length 0.

    For a closed polyline (last point repeats the first) the spacing wraps
    around, so no point is placed twice.
    """
    polyline = np.asarray(polyline, dtype=float)
    seg = np.linalg.norm(np.diff(polyline, axis=0), axis=1)
    cumulative = np.concatenate([[0.0], np.cumsum(seg)])
    total = cumulative[-1]
    targets = np.arange(count, dtype=float) * total / count
    out = np.empty((count, polyline.shape[1]))
    for axis in range(polyline.shape[1]):
        out[:, axis] = np.interp(targets, cumulative, polyline[:, axis])
    return out


def point_segment_distances(
    points: np.ndarray, seg_a: np.ndarray, seg_b: np.ndarray
) -> np.ndarray:
    """
    Distances from every point to every segment.

    Args:
        points: (P, 3)
        seg_a, seg_b: (E, 3) segment endpoints

    Returns:
        (P, E) distance matrix
    """
    d = seg_b - seg_a
    length_sq = np.einsum("ij,ij->i", d, d)
    length_sq = np.where(length_sq > 0.0, length_sq, 1.0)
    rel = points[:, None, :] - seg_a[None, :, :]
    t = np.clip(np.einsum("pej,ej->pe", rel, d) / length_sq, 0.0, 1.0)
    closest = seg_a[None, :, :] + t[..., None] * d[None, :, :]
    return np.linalg.norm(points[:, None, :] - closest, axis=2)
