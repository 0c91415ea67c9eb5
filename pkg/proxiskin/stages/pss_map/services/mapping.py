from typing import Optional, Sequence

import numpy as np
from loguru import logger
from scipy import stats

from proxiskin.commons.errors import UncalibratedEnsemble
from proxiskin.stages.pss_map.schema import (
    DataSplit,
    DistanceBin,
    Ensemble,
    GridConfig,
    PssGrid,
    PssMetrics,
)
from proxiskin.stages.pss_map.services.ensemble import predict, prediction_errors
from proxiskin.stages.sensor_layout.schema import Electrode


def grid_extents(config: GridConfig) -> np.ndarray:
    span = np.asarray(config.upper) - np.asarray(config.lower)
    return np.rint(span / config.spacing).astype(np.int64) + 1


def sample_features(ensemble: Ensemble, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Per-channel independent uniform draws over the observed training range."""
    low, high = ensemble.scaling.feature_low, ensemble.scaling.feature_high
    return rng.uniform(low, high, size=(samples, len(low)))


def bin_predictions(
    positions: np.ndarray, sigma: np.ndarray, origin: np.ndarray, config: GridConfig
) -> PssGrid:
    """Assign origin-frame predictions to their nearest grid point and average sigma per cell."""
    lower = np.asarray(config.lower, dtype=float)
    extents = grid_extents(config)
    idx = np.rint((positions.reshape(-1, 3) - lower) / config.spacing).astype(np.int64)
    inside = np.all((idx >= 0) & (idx < extents), axis=1)
    flat = np.ravel_multi_index(idx[inside].T, tuple(extents)) if inside.any() else np.empty(0, np.int64)
    cells, inverse = np.unique(flat, return_inverse=True)
    counts = np.bincount(inverse, minlength=len(cells))
    sums = np.bincount(inverse, weights=sigma[inside], minlength=len(cells))
    return PssGrid(
        origin=origin,
        lower=lower,
        spacing=config.spacing,
        extents=extents,
        cells=np.column_stack(np.unravel_index(cells, tuple(extents))).reshape(-1, 3),
        counts=counts,
        mean_sigma=sums / np.maximum(counts, 1),
        cutoff=config.cutoff,
        samples=len(positions),
        out_of_extent=int((~inside).sum()),
    )


def map_pss(ensemble: Ensemble, config: GridConfig = GridConfig(), seed: int = 0) -> PssGrid:
    """
    Project the ensemble's uncertainty onto a regular grid around the skin origin.

    Raises:
        UncalibratedEnsemble: calibrate_uncertainty has not been applied
    """
    if ensemble.calibration is None:
        raise UncalibratedEnsemble(
            "Ensemble has no uncertainty calibration; run calibrate_uncertainty "
            "on a validation split (the train command does this) before mapping"
        )
    rng = np.random.default_rng(seed)
    features = sample_features(ensemble, config.samples, rng)
    mu_parts, sigma_parts = [], []
    for start in range(0, config.samples, config.chunk):
        prediction = predict(ensemble, features[start : start + config.chunk])
        mu_parts.append(prediction.mu_p)
        sigma_parts.append(prediction.sigma_cal)
    mu = np.vstack(mu_parts) if mu_parts else np.empty((0, 3))
    sigma = np.concatenate(sigma_parts) if sigma_parts else np.empty(0)
    grid = bin_predictions(mu, sigma, ensemble.origin, config)
    logger.info(
        f"PSS map: {len(grid.counts)} occupied cells, {int(grid.usable.sum())} usable, "
        f"{grid.out_of_extent} of {grid.samples} predictions outside the grid"
    )
    return grid


def nearest_surface_distance(
    positions: np.ndarray, electrodes: Sequence[Electrode], object_radius: float
) -> np.ndarray:
    """(N, S) distance from each object surface to each electrode center."""
    centers = np.vstack([e.center for e in electrodes])
    return np.linalg.norm(positions[:, None, :] - centers[None, :, :], axis=2) - object_radius


def two_segment_knee(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    """Breakpoint of the best two-line piecewise least-squares fit, ``None`` under four points."""
    if len(x) < 4:
        return None
    best, knee = np.inf, None
    for k in range(2, len(x) - 1):
        sse = 0.0
        for xs, ys in ((x[:k], y[:k]), (x[k - 1 :], y[k - 1 :])):
            coef = np.polyfit(xs, ys, 1)
            sse += float(np.sum((np.polyval(coef, xs) - ys) ** 2))
        if sse < best:
            best, knee = sse, float(x[k - 1])
    return knee


def evaluate_on_test(
    ensemble: Ensemble,
    test: DataSplit,
    electrodes: Sequence[Electrode],
    detection_ranges: Sequence[Optional[float]],
    object_radius: float = 0.0125,
    bin_width: float = 0.02,
) -> PssMetrics:
    """
    Error statistics on unseen trajectories.

    Frames are binned by the true surface distance to the nearest electrode. A
    frame is in range when some sensor sees the object within its detection
    range; sensors without a range never count.
    """
    errors, prediction = prediction_errors(ensemble, test)
    world = test.targets + ensemble.origin
    distances = nearest_surface_distance(world, electrodes, object_radius)
    nearest = distances.min(axis=1)

    ranges = np.array([-np.inf if r is None else r for r in detection_ranges], dtype=float)
    in_range = np.any(distances <= ranges[None, :], axis=1)

    edges = np.arange(0.0, max(float(nearest.max()), 0.0) + bin_width, bin_width)
    which = np.clip(np.floor(np.maximum(nearest, 0.0) / bin_width).astype(int), 0, len(edges) - 1)
    bins = [
        DistanceBin(
            center_m=float(edges[b] + bin_width / 2.0),
            median_error_m=float(np.median(errors[which == b])),
            count=int((which == b).sum()),
        )
        for b in np.unique(which)
    ]
    knee = two_segment_knee(
        np.array([b.center_m for b in bins]), np.array([b.median_error_m for b in bins])
    )

    sigma = prediction.sigma_cal
    pearson = 0.0
    if len(errors) > 1 and np.ptp(errors) > 0.0 and np.ptp(sigma) > 0.0:
        pearson = float(stats.pearsonr(errors, sigma)[0])

    med_in = float(np.median(errors[in_range])) if in_range.any() else None
    med_out = float(np.median(errors[~in_range])) if (~in_range).any() else None
    ratio = med_out / med_in if med_in and med_out is not None else None

    metrics = PssMetrics(
        frames=len(errors),
        mean_error_m=float(errors.mean()),
        median_error_m=float(np.median(errors)),
        pearson_error_sigma=pearson,
        bins=bins,
        knee_distance_m=knee,
        median_error_in_range_m=med_in,
        median_error_out_of_range_m=med_out,
        out_of_range_ratio=ratio,
    )
    logger.info(
        f"Test: median error {metrics.median_error_m:.4f} m, r(e_p, sigma_cal) = {pearson:.3f}, "
        f"out/in range ratio {ratio}"
    )
    return metrics
