from typing import Optional, Sequence

import numpy as np
from loguru import logger

from proxiskin.commons.errors import EmptyApproach, NoDetection, TooFewSamples
from proxiskin.stages.cap_physics.schema import CircuitParams, CouplingModel, Trajectory
from proxiskin.stages.cap_physics.services import noise_baseline
from proxiskin.stages.characterize.schema import (
    CharacterizationReport,
    CharacterizeConfig,
    SensorCharacterization,
)
from proxiskin.stages.characterize.services.analysis import (
    assign_nearest_sensor,
    detection_range,
    fit_power_law,
    isolate_approach,
    snr_series,
)
from proxiskin.stages.generation.schema import SkinUnit
from proxiskin.stages.sensor_layout.schema import Electrode


def characterize_skin(
    trajectories: Sequence[Trajectory],
    skin: SkinUnit,
    coupling: CouplingModel,
    config: CharacterizeConfig = CharacterizeConfig(),
) -> CharacterizationReport:
    """
    Fit, SNR and detection range of every sensor from approach recordings.

    Approaches are pooled over all trajectories. A sensor whose approach
    cannot be fitted keeps ``fit=None`` and no detection range.
    """
    return characterize_sensors(
        trajectories, skin.electrodes, skin.circuits, coupling, config, skin.wire_lengths
    )


def characterize_sensors(
    trajectories: Sequence[Trajectory],
    electrodes: Sequence[Electrode],
    circuits: Sequence[CircuitParams],
    coupling: CouplingModel,
    config: CharacterizeConfig = CharacterizeConfig(),
    wire_lengths: Optional[Sequence[float]] = None,
) -> CharacterizationReport:
    """Per-sensor characterization of any electrode set, indexed by electrode id."""
    baseline = noise_baseline(trajectories, config.window_s)
    labels = [assign_nearest_sensor(traj, electrodes) for traj in trajectories]

    sensors = []
    for e in electrodes:
        sid = e.id
        circuit = circuits[sid]
        mu, sigma = float(baseline.mu_n[sid]), float(baseline.sigma_n[sid])

        snr_parts, d_parts = [], []
        for traj, label in zip(trajectories, labels):
            mine = label == sid
            snr = snr_series(traj.counts[:, sid], mu, sigma, config.smoothing_window)
            snr_parts.append(snr[mine])
            d_parts.append(
                np.linalg.norm(traj.object_positions[mine] - e.center, axis=1)
                - coupling.object_radius
            )
        snr = np.concatenate(snr_parts)
        d = np.concatenate(d_parts)
        contact = d <= e.depth + config.contact_distance
        pool = snr[contact] if contact.any() else snr
        max_snr = float(pool.max()) if len(pool) else 0.0

        fit, d_star = None, None
        try:
            samples = isolate_approach(
                trajectories, labels, e, baseline, circuit, coupling.object_radius,
                config.noise_floor_k,
            )
            weights = samples.c_signal * circuit.beta / sigma if config.weighted_fit else None
            fit = fit_power_law(samples, weights)
            d_star = detection_range(fit, baseline, circuit, config.snr_threshold)
        except (EmptyApproach, TooFewSamples, NoDetection) as exc:
            logger.warning(f"Sensor {sid}: {exc.message}")

        sensors.append(
            SensorCharacterization(
                sensor_id=sid,
                area_m2=e.area,
                wire_length_m=float(wire_lengths[sid]) if wire_lengths is not None else 0.0,
                mu_n=mu,
                sigma_n=sigma,
                fit=fit,
                max_snr_at_contact=max_snr,
                detection_range_m=d_star,
            )
        )
        logger.info(
            f"Sensor {sid}: w={fit.w:.3f} k={fit.k:.3e} range={d_star}"
            if fit is not None
            else f"Sensor {sid}: no fit"
        )

    return CharacterizationReport(
        snr_threshold=config.snr_threshold,
        noise_floor_k=config.noise_floor_k,
        window_s=config.window_s,
        sensors=sensors,
    )
