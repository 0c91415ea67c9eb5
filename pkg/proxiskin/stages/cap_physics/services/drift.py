from typing import Optional

import numpy as np

from proxiskin.commons.errors import InvalidParameter


class DriftCompensator:
    """
    Slow PID baseline tracker, one per channel.

    The baseline ``b`` follows the signal ``x`` through
    ``db/dt = (kp * e + ki * I / tau + kd * de/dt) / tau`` with ``e = x - b``
    and ``I`` the time integral of ``e``. Transients much shorter than
    ``tau`` pass through nearly untouched.
    """

    def __init__(
        self,
        channels: int,
        kp: float = 1.0,
        ki: float = 0.1,
        kd: float = 0.0,
        adaptation_timescale: float = 60.0,
        initial_baseline: Optional[np.ndarray] = None,
    ):
        if min(kp, ki, kd) < 0.0:
            raise InvalidParameter("PID gains must be non-negative")
        if adaptation_timescale <= 0.0:
            raise InvalidParameter("adaptation_timescale must be positive")
        self.kp = kp
        self.ki = ki
        self.kd = kd
        self.tau = adaptation_timescale
        self.baseline = (
            None if initial_baseline is None else np.asarray(initial_baseline, dtype=float).copy()
        )
        self.integral = np.zeros(channels)
        self.previous_error: Optional[np.ndarray] = None

    def update(self, x: np.ndarray, dt: float) -> np.ndarray:
        """Feed one sample per channel, return the baseline-corrected sample."""
        x = np.asarray(x, dtype=float)
        if self.baseline is None:
            self.baseline = x.copy()
        error = x - self.baseline
        corrected = error.copy()

        derivative = np.zeros_like(error)
        if self.previous_error is not None and self.kd > 0.0:
            derivative = (error - self.previous_error) / dt
        self.integral += error * dt
        self.previous_error = error
        self.baseline = self.baseline + dt / self.tau * (
            self.kp * error + self.ki * self.integral / self.tau + self.kd * derivative
        )
        return corrected


def drift_compensator(
    stream: np.ndarray,
    dt: float,
    kp: float = 1.0,
    ki: float = 0.1,
    kd: float = 0.0,
    adaptation_timescale: float = 60.0,
    initial_baseline: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Baseline-corrected copy of a (samples,) or (samples, channels) count stream.
    """
    stream = np.asarray(stream, dtype=float)
    flat = stream.ndim == 1
    data = stream[:, None] if flat else stream
    compensator = DriftCompensator(
        data.shape[1], kp, ki, kd, adaptation_timescale, initial_baseline
    )
    out = np.vstack([compensator.update(row, dt) for row in data]) if len(data) else data.copy()
    return out[:, 0] if flat else out
