from typing import List, Optional, Sequence

import numpy as np

from proxiskin.commons.errors import BelowBaseline
from proxiskin.stages.avoid_sim.schema import ControllerConfig, ObstacleEstimate
from proxiskin.stages.cap_physics.schema import CircuitParams, CouplingParams, NoiseBaseline
from proxiskin.stages.cap_physics.services.measurement import estimate_distance
from proxiskin.stages.characterize.schema import PowerLawFit


def inversion_params(fit: Optional[PowerLawFit]) -> Optional[CouplingParams]:
    """Distance law recovered from a characterization fit, ``None`` when it cannot be inverted."""
    if fit is None or not 0.0 < fit.w <= 1.5:
        return None
    return CouplingParams(k=fit.k, w=fit.w)


def extract_obstacles(
    counts: np.ndarray,
    centers: np.ndarray,
    normals: np.ndarray,
    fits: Sequence[Optional[PowerLawFit]],
    circuits: Sequence[CircuitParams],
    baseline: NoiseBaseline,
    snr_threshold: float = 3.5,
) -> List[ObstacleEstimate]:
    """
    Obstacle points from one frame: every sensor at or above the SNR threshold
    inverts its fitted distance law and projects the distance along its world normal.

    Sensors without a usable fit and readings below baseline are skipped.
    """
    counts = np.asarray(counts, dtype=float)
    snr = np.abs(counts - baseline.mu_n) / baseline.sigma_n
    obstacles = []
    for sid in np.flatnonzero(snr >= snr_threshold):
        cp = inversion_params(fits[sid])
        if cp is None:
            continue
        try:
            d = estimate_distance(counts[sid], circuits[sid], cp, float(baseline.mu_n[sid]))
        except BelowBaseline:
            continue
        obstacles.append(
            ObstacleEstimate(
                sensor_id=int(sid),
                distance=d,
                world_point=centers[sid] + d * normals[sid],
                confidence=float(snr[sid]),
            )
        )
    return obstacles


def speed_scaling(obstacles: Sequence[ObstacleEstimate], gains: ControllerConfig) -> float:
    if not obstacles:
        return 1.0
    closest = min(o.distance for o in obstacles)
    return float(np.clip(closest / gains.d_safe, gains.s_min, 1.0))


def avoidance_command(
    v_des: np.ndarray,
    obstacles: Sequence[ObstacleEstimate],
    position: np.ndarray,
    gains: ControllerConfig,
) -> np.ndarray:
    """
    Scaled desired velocity plus the summed repulsion of every obstacle.

    ``v = s * v_des + sum(k_rep * max(0, 1 - d / d_safe) * u)`` where ``u`` points
    from the obstacle point to ``position`` and ``s = clamp(min d / d_safe, s_min, 1)``.
    """
    v_des = np.asarray(v_des, dtype=float)
    if not obstacles:
        return v_des.copy()
    repulsion = np.zeros(3)
    for o in obstacles:
        away = np.asarray(position, dtype=float) - o.world_point
        norm = np.linalg.norm(away)
        if norm == 0.0:
            continue
        repulsion += gains.k_rep * max(0.0, 1.0 - o.distance / gains.d_safe) * away / norm
    return speed_scaling(obstacles, gains) * v_des + repulsion


def tracking_velocity(
    p_des: np.ndarray, v_ff: np.ndarray, position: np.ndarray, gains: ControllerConfig
) -> np.ndarray:
    """Feed-forward plus proportional correction, clamped to ``max_speed``."""
    v = v_ff + gains.k_track * (p_des - position)
    speed = np.linalg.norm(v)
    if speed > gains.max_speed:
        v = v * (gains.max_speed / speed)
    return v
