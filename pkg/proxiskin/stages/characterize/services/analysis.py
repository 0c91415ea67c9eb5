from typing import Optional, Sequence

import numpy as np
from loguru import logger
from scipy import stats
from scipy.ndimage import uniform_filter1d

from proxiskin.commons.errors import (
    EmptyApproach,
    InsufficientSensors,
    InvalidParameter,
    NoDetection,
    TooFewSamples,
)
from proxiskin.stages.cap_physics.schema import CircuitParams, NoiseBaseline, Trajectory
from proxiskin.stages.cap_physics.services.coupling import D_FLOOR
from proxiskin.stages.characterize.schema import (
    ApproachSamples,
    AreaRangeReport,
    AreaRangeRow,
    CharacterizationReport,
    PowerLawFit,
)
from proxiskin.stages.sensor_layout.schema import Electrode

MIN_FIT_SAMPLES = 5
W_BAND = (0.4, 1.0)


def _centers(electrodes: Sequence[Electrode]) -> np.ndarray:
    return np.vstack([e.center for e in electrodes])


def assign_nearest_sensor(trajectory: Trajectory, electrodes: Sequence[Electrode]) -> np.ndarray:
    """Per-frame id of the electrode closest to the object; ties go to the lowest id."""
    if not electrodes or not trajectory.frame_count:
        raise InvalidParameter("nearest-sensor labeling needs frames and electrodes")
    centers = _centers(electrodes)
    dist = np.linalg.norm(
        trajectory.object_positions[:, None, :] - centers[None, :, :], axis=2
    )
    ids = np.array([e.id for e in electrodes])
    return ids[np.argmin(dist, axis=1)]


def isolate_approach(
    trajectories: Sequence[Trajectory],
    labels: Sequence[np.ndarray],
    electrode: Electrode,
    baseline: NoiseBaseline,
    circuit: CircuitParams,
    object_radius: float,
    noise_floor_k: float = 1.0,
) -> ApproachSamples:
    """
    Distance/signal pairs of the frames labeled with ``electrode``.

    Counts are baseline-subtracted and converted to capacitance. Every sample
    at or beyond the closest distance where the reading sits under the noise
    floor ``mu_n + k * sigma_n`` is dropped, as is any non-positive signal.

    Raises:
        EmptyApproach: nothing survives
    """
    sid = electrode.id
    mu = float(baseline.mu_n[sid])
    floor = mu + noise_floor_k * float(baseline.sigma_n[sid])

    d_parts, m_parts = [], []
    for traj, label in zip(trajectories, labels):
        mine = np.asarray(label) == sid
        positions = traj.object_positions[mine]
        d_parts.append(np.linalg.norm(positions - electrode.center, axis=1) - object_radius)
        m_parts.append(traj.counts[mine, sid].astype(float))
    d = np.concatenate(d_parts) if d_parts else np.empty(0)
    m = np.concatenate(m_parts) if m_parts else np.empty(0)

    under = m <= floor
    d_nf = float(d[under].min()) if under.any() else None
    keep = np.ones(len(d), dtype=bool) if d_nf is None else d < d_nf
    c_signal = (m - mu) / circuit.beta
    keep &= (c_signal > 0.0) & (d > 0.0)

    if not keep.any():
        raise EmptyApproach(f"Sensor {sid} has no sample above its noise floor")
    order = np.argsort(d[keep], kind="stable")
    return ApproachSamples(
        sensor_id=sid,
        d=d[keep][order],
        c_signal=c_signal[keep][order],
        noise_floor_distance=d_nf,
    )


def fit_power_law(
    samples: ApproachSamples, weights: Optional[np.ndarray] = None
) -> PowerLawFit:
    """
    Least-squares line ``log C = -w log d + log k``.

    ``weights`` (e.g. per-sample SNR) switch to a weighted fit; the reported
    Pearson r is always the unweighted log-space correlation.

    Raises:
        TooFewSamples: fewer than 5 samples
    """
    if len(samples) < MIN_FIT_SAMPLES:
        raise TooFewSamples(
            f"Sensor {samples.sensor_id}: {len(samples)} samples, need {MIN_FIT_SAMPLES}"
        )
    x = np.log(samples.d)
    y = np.log(samples.c_signal)
    if np.ptp(x) == 0.0:
        raise TooFewSamples(f"Sensor {samples.sensor_id}: all samples at one distance")

    result = stats.linregress(x, y)
    slope, intercept, r = result.slope, result.intercept, result.rvalue
    if weights is not None:
        slope, intercept = np.polyfit(x, y, 1, w=np.sqrt(np.asarray(weights, dtype=float)))

    w = float(-slope)
    in_band = W_BAND[0] <= w < W_BAND[1]
    if not in_band:
        logger.warning(f"Sensor {samples.sensor_id}: fitted w={w:.3f} outside [0.4, 1)")
    return PowerLawFit(
        sensor_id=samples.sensor_id,
        k=float(np.exp(intercept)),
        w=w,
        pearson_r=float(r),
        n_samples=len(samples),
        w_in_band=in_band,
    )


def snr_series(
    counts: np.ndarray, mu_n: float, sigma_n: float, smoothing_window: int = 1
) -> np.ndarray:
    """``|mu_n - x| / sigma_n`` per sample, x optionally moving-averaged."""
    if sigma_n <= 0.0:
        raise InvalidParameter("sigma_n must be positive")
    x = np.asarray(counts, dtype=float)
    if smoothing_window > 1 and len(x):
        x = uniform_filter1d(x, size=smoothing_window, mode="nearest")
    return np.abs(mu_n - x) / sigma_n


def detection_range(
    fit: PowerLawFit,
    baseline: NoiseBaseline,
    circuit: CircuitParams,
    threshold: float = 3.5,
    d_floor: float = D_FLOOR,
) -> float:
    """
    Distance where the fitted signal falls to ``threshold`` x sigma_n:
    ``(beta * k / (threshold * sigma_n)) ** (1 / w)``.

    Raises:
        NoDetection: the crossing lies below ``d_floor``
    """
    sigma_n = float(baseline.sigma_n[fit.sensor_id])
    if fit.w <= 0.0:
        raise NoDetection(f"Sensor {fit.sensor_id}: non-decaying fit (w={fit.w:.3f})")
    d_star = (circuit.beta * fit.k / (threshold * sigma_n)) ** (1.0 / fit.w)
    if d_star < d_floor:
        raise NoDetection(
            f"Sensor {fit.sensor_id} never reaches SNR {threshold} beyond {d_floor} m"
        )
    return float(d_star)


def area_vs_range_report(
    report: CharacterizationReport, electrodes: Sequence[Electrode]
) -> AreaRangeReport:
    """Sensors sorted by electrode area with the area/range Pearson correlation."""
    if len(electrodes) < 3:
        raise InsufficientSensors(f"Need at least 3 sensors, got {len(electrodes)}")
    ranges = {s.sensor_id: s.detection_range_m for s in report.sensors}
    rows = sorted(
        (
            AreaRangeRow(sensor_id=e.id, area_m2=e.area, detection_range_m=ranges.get(e.id))
            for e in electrodes
        ),
        key=lambda row: (row.area_m2, row.sensor_id),
    )
    valid = [r for r in rows if r.detection_range_m is not None]
    if len(valid) < 3:
        raise InsufficientSensors(f"Only {len(valid)} sensors have a detection range")
    areas = np.array([r.area_m2 for r in valid])
    distances = np.array([r.detection_range_m for r in valid])
    if np.ptp(areas) == 0.0 or np.ptp(distances) == 0.0:
        pearson = 0.0
    else:
        pearson = float(stats.pearsonr(areas, distances)[0])
    return AreaRangeReport(rows=rows, pearson_r=pearson)
