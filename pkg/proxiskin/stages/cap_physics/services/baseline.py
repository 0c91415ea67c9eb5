from typing import Sequence

import numpy as np

from proxiskin.commons.errors import InvalidParameter
from proxiskin.stages.cap_physics.schema import NoiseBaseline, Trajectory

# std of uniform rounding error, the smallest spread an integer counter can show
QUANTIZATION_SIGMA = 1.0 / np.sqrt(12.0)


def noise_baseline(trajectories: Sequence[Trajectory], window_s: float = 2.0) -> NoiseBaseline:
    """
    Inactive-signal mean and std per sensor, pooled over the calibration
    windows at the start and end of every trajectory.
    """
    if not trajectories:
        raise InvalidParameter("noise baseline needs at least one trajectory")
    samples = np.vstack([traj.counts[traj.window_mask(window_s)] for traj in trajectories])
    if not len(samples):
        raise InvalidParameter(f"no frames inside the {window_s} s calibration windows")
    sigma = np.maximum(samples.std(axis=0), QUANTIZATION_SIGMA)
    return NoiseBaseline(mu_n=samples.mean(axis=0), sigma_n=sigma, window_s=window_s)
