from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from proxiskin.commons.errors import InvalidParameter
from proxiskin.stages.cap_physics.schema import CouplingParams, EnvironmentModel
from proxiskin.stages.sensor_layout.schema import Electrode

D_FLOOR = 1.0e-4


def surface_distances(
    centers: np.ndarray, object_center: np.ndarray, object_radius: float
) -> np.ndarray:
    """Distance from each electrode center to the sphere surface (negative inside)."""
    centers = np.asarray(centers, dtype=float).reshape(-1, 3)
    return np.linalg.norm(centers - np.asarray(object_center, dtype=float), axis=1) - object_radius


def coupling_vector(
    centers: np.ndarray,
    k: np.ndarray,
    w: float,
    object_center: np.ndarray,
    object_radius: float,
    d_floor: float = D_FLOOR,
) -> np.ndarray:
    """Object coupling C_t of every electrode, ``k / max(d, d_floor)^w``."""
    d = np.maximum(surface_distances(centers, object_center, object_radius), d_floor)
    return np.asarray(k, dtype=float) / d**w


def coupling_capacitance(
    electrode: Electrode,
    object_center: np.ndarray,
    object_radius: float,
    cp: CouplingParams,
    d_floor: float = D_FLOOR,
) -> float:
    """Coupling between one electrode and a conductive sphere (F)."""
    return float(
        coupling_vector(electrode.center, cp.k, cp.w, object_center, object_radius, d_floor)[0]
    )


def parasitic_matrix(electrodes: Sequence[Electrode], env: EnvironmentModel) -> np.ndarray:
    """
    Cross-coupling gains between electrodes.

    ``gamma[i, j] = g0 * exp(-|c_i - c_j| / decay)`` off the diagonal, 0 on it;
    sensor i picks up ``sum_j gamma[i, j] * C_t[j]``.
    """
    if not electrodes:
        raise InvalidParameter("parasitic matrix needs at least one electrode")
    centers = np.vstack([e.center for e in electrodes])
    gamma = env.parasitic_gain * np.exp(-cdist(centers, centers) / env.parasitic_decay)
    np.fill_diagonal(gamma, 0.0)
    return gamma
