from typing import Optional, Sequence

import numpy as np
from loguru import logger

from proxiskin.stages.cap_physics.schema import (
    CircuitParams,
    CouplingModel,
    EnvironmentModel,
    ObjectPath,
    Trajectory,
)
from proxiskin.stages.cap_physics.services.coupling import coupling_vector, parasitic_matrix
from proxiskin.stages.sensor_layout.schema import Electrode


class SkinSensorModel:
    """
    Forward model of one skin unit's sensors.

    Electrode centers default to the skin's own (link) frame; pass world
    centers to ``capacitance`` when the skin moves. Parasitic gains depend
    only on inter-electrode distances, so they stay valid under rigid motion.
    """

    def __init__(
        self,
        electrodes: Sequence[Electrode],
        circuits: Sequence[CircuitParams],
        coupling: CouplingModel,
        env: EnvironmentModel,
    ):
        if len(electrodes) != len(circuits):
            raise ValueError("one circuit per electrode is required")
        self.electrodes = list(electrodes)
        self.coupling = coupling
        self.env = env
        self.centers = np.vstack([e.center for e in electrodes])
        self.k = coupling.k_per_area * np.array([e.area for e in electrodes])
        self.betas = np.array([c.beta for c in circuits])
        self.gamma = parasitic_matrix(self.electrodes, env)
        self.c_env = env.baseline_vector(len(electrodes))

    @classmethod
    def from_skin(cls, skin, coupling: CouplingModel, env: EnvironmentModel) -> "SkinSensorModel":
        """Model of a generated skin unit with its own per-sensor circuits."""
        return cls(skin.electrodes, skin.circuits, coupling, env)

    @property
    def sensor_count(self) -> int:
        return len(self.electrodes)

    def object_coupling(
        self, object_center: np.ndarray, centers: Optional[np.ndarray] = None
    ) -> np.ndarray:
        return coupling_vector(
            self.centers if centers is None else centers,
            self.k,
            self.coupling.w,
            object_center,
            self.coupling.object_radius,
            self.coupling.d_floor,
        )

    def capacitance(
        self,
        object_center: np.ndarray,
        c_env: Optional[np.ndarray] = None,
        centers: Optional[np.ndarray] = None,
    ) -> np.ndarray:
        """Total sensed capacitance: environment + own coupling + parasitic pickup."""
        ct = self.object_coupling(object_center, centers)
        return (self.c_env if c_env is None else c_env) + ct + self.gamma @ ct

    def read(self, C: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Quantized counter values with Gaussian counter noise, clamped at 0."""
        ideal = np.rint(np.maximum(C, 0.0) * self.betas)
        noise = np.rint(rng.normal(0.0, self.env.noise_sigma, self.sensor_count))
        return np.maximum(ideal + noise, 0.0).astype(np.int64)

    def drift_step(self, c_env: np.ndarray, dt: float, rng: np.random.Generator) -> np.ndarray:
        return c_env + rng.normal(0.0, self.env.drift_rate * np.sqrt(dt), self.sensor_count)

    def baseline_counts(self) -> np.ndarray:
        return self.c_env * self.betas


def simulate_trajectory(
    model: SkinSensorModel,
    object_path: ObjectPath,
    seed: int,
    frame_rate: float = 20.0,
) -> Trajectory:
    """
    Sample the sensors along an object path at a fixed frame rate.

    Per frame the environment capacitance takes a random-walk step, then each
    sensor reads ``c_env + C_t + gamma @ C_t`` through its counter. All draws
    come from one generator seeded with ``seed``.
    """
    rng = np.random.default_rng(seed)
    t, positions = object_path.sample(frame_rate)
    dt = 1.0 / frame_rate

    c_env = model.c_env.copy()
    counts = np.empty((len(t), model.sensor_count), dtype=np.int64)
    truth = np.empty((len(t), model.sensor_count))
    for i, position in enumerate(positions):
        if i:
            c_env = model.drift_step(c_env, dt, rng)
        truth[i] = model.capacitance(position, c_env)
        counts[i] = model.read(truth[i], rng)

    logger.debug(
        f"Simulated {len(t)} frames over {object_path.duration:.1f} s for "
        f"{model.sensor_count} sensors (seed {seed})"
    )
    return Trajectory(
        t=t,
        counts=counts,
        object_positions=positions,
        truth_capacitances=truth,
        frame_rate=frame_rate,
    )
