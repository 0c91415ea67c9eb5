from typing import List, Sequence

import numpy as np

from proxiskin.commons.errors import InvalidParameter
from proxiskin.commons.geometry import frame_from_normal
from proxiskin.stages.cap_physics.schema import ObjectPath, ProtocolConfig
from proxiskin.stages.sensor_layout.schema import Electrode


class _PathBuilder:
    def __init__(self, start: np.ndarray):
        self.times: List[float] = [0.0]
        self.positions: List[np.ndarray] = [np.asarray(start, dtype=float)]

    def move(self, position: np.ndarray, duration: float) -> None:
        self.times.append(self.times[-1] + duration)
        self.positions.append(np.asarray(position, dtype=float))

    def hold(self, duration: float) -> None:
        self.move(self.positions[-1], duration)

    def build(self) -> ObjectPath:
        return ObjectPath(times=np.asarray(self.times), positions=np.vstack(self.positions))


def _lateral(rng: np.random.Generator, axes: np.ndarray, spread: float) -> np.ndarray:
    """Uniform offset in the plane spanned by the first two columns of ``axes``."""
    jitter = rng.uniform(-spread, spread, 2)
    return axes[:, 0] * jitter[0] + axes[:, 1] * jitter[1]


def approach_protocol(
    electrodes: Sequence[Electrode],
    object_radius: float,
    seed: int,
    config: ProtocolConfig = ProtocolConfig(),
) -> ObjectPath:
    """
    Hover-and-touch recording script for a spherical test object.

    Holds far from the skin for the calibration window, then visits every
    sensor in a seeded order: transit to a jittered hover point, descend
    through a jittered midpoint, touch the dermis above the electrode, dwell,
    rise back to the hover point. Ends with a second far hold.
    """
    if not electrodes:
        raise InvalidParameter("approach protocol needs at least one electrode")
    rng = np.random.default_rng(seed)

    centers = np.vstack([e.center for e in electrodes])
    normals = np.vstack([e.normal for e in electrodes])
    mean_normal = normals.sum(axis=0)
    if np.linalg.norm(mean_normal) < 0.5:
        # normals cancel on a ring: hold along the direction none of them spans
        mean_normal = np.linalg.svd(normals)[2][-1]
    up = mean_normal / np.linalg.norm(mean_normal)
    skin_axes = frame_from_normal(centers.mean(axis=0), up)[:3, :3]

    def far_point() -> np.ndarray:
        height = rng.uniform(*config.far_distance)
        return centers.mean(axis=0) + height * up + _lateral(rng, skin_axes, config.far_lateral)

    path = _PathBuilder(far_point())
    path.hold(config.calibration_s)

    for index in rng.permutation(len(electrodes)):
        e = electrodes[index]
        axes = frame_from_normal(e.center, e.normal)[:3, :3]
        contact = e.center + e.normal * (e.depth + object_radius)
        hover = contact + e.normal * rng.uniform(*config.hover_distance)
        hover = hover + _lateral(rng, axes, config.hover_lateral)
        middle = 0.5 * (hover + contact) + _lateral(rng, axes, config.mid_lateral)

        path.move(hover, config.transit_s)
        path.move(middle, 0.5 * config.descent_s)
        path.move(contact, 0.5 * config.descent_s)
        path.hold(config.dwell_s)
        path.move(hover, config.ascent_s)

    path.move(far_point(), config.transit_s)
    path.hold(config.calibration_s)
    return path.build()
