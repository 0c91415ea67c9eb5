from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from proxiskin.commons.errors import InvalidParameter, TrajectoryTooShort
from proxiskin.stages.cap_physics.schema import Trajectory
from proxiskin.stages.cap_physics.services.baseline import QUANTIZATION_SIGMA
from proxiskin.stages.pss_map.schema import DataSplit, DatasetConfig, PssDataset


def split_trajectories(
    count: int, fractions: Tuple[float, float, float], seed: int
) -> Tuple[List[int], List[int], List[int]]:
    """
    Seeded assignment of whole trajectories to (train, validation, test).

    Validation and test get ``max(1, round(fraction * count))`` trajectories each,
    train gets the rest.
    """
    n_val = max(1, int(round(fractions[1] * count)))
    n_test = max(1, int(round(fractions[2] * count)))
    n_train = count - n_val - n_test
    if n_train < 1:
        raise InvalidParameter(
            f"{count} trajectories cannot fill train, validation and test splits",
            data={"trajectories": count},
        )
    order = np.random.default_rng(seed).permutation(count)
    train = sorted(order[:n_train].tolist())
    val = sorted(order[n_train : n_train + n_val].tolist())
    test = sorted(order[n_train + n_val :].tolist())
    return train, val, test


def _split(
    ids: Sequence[int],
    features: Sequence[np.ndarray],
    targets: Sequence[np.ndarray],
) -> DataSplit:
    return DataSplit(
        features=np.vstack([features[i] for i in ids]),
        targets=np.vstack([targets[i] for i in ids]),
        trajectory_ids=np.concatenate([np.full(len(features[i]), i) for i in ids]),
        frame_ids=np.concatenate([np.arange(len(features[i])) for i in ids]),
    )


def prepare_dataset(
    trajectories: Sequence[Trajectory],
    betas: np.ndarray,
    origin: np.ndarray,
    config: DatasetConfig = DatasetConfig(),
    seed: int = 0,
) -> PssDataset:
    """
    Capacitance-to-position pairs for ensemble training.

    Each trajectory's counts have the mean of its own head window subtracted and
    are converted to capacitance with the per-sensor ``betas``. Targets are the
    object positions relative to the skin ``origin``. The channel scale used for
    input squashing is the pooled head-window std of the training trajectories.

    Raises:
        TrajectoryTooShort: a recording is shorter than the baseline window
    """
    betas = np.asarray(betas, dtype=float)
    origin = np.asarray(origin, dtype=float)
    window = config.baseline_window_s
    features, targets, heads = [], [], []
    for index, traj in enumerate(trajectories):
        duration = float(traj.t[-1] - traj.t[0])
        head = traj.head_mask(window)
        if duration < window or head.all():
            raise TrajectoryTooShort(
                f"Trajectory {index} lasts {duration:.2f} s, shorter than the {window} s baseline window",
                data={"trajectory": index, "duration_s": duration},
            )
        if traj.sensor_count != len(betas):
            raise InvalidParameter("one circuit beta per sensor channel is required")
        counts = traj.counts.astype(float)
        baseline = counts[head].mean(axis=0)
        features.append((counts - baseline) / betas)
        targets.append(traj.object_positions - origin)
        heads.append(head)

    train_ids, val_ids, test_ids = split_trajectories(len(trajectories), config.split, seed)
    head_features = np.vstack([features[i][heads[i]] for i in train_ids])
    channel_scale = np.maximum(head_features.std(axis=0), QUANTIZATION_SIGMA / betas)

    dataset = PssDataset(
        train=_split(train_ids, features, targets),
        validation=_split(val_ids, features, targets),
        test=_split(test_ids, features, targets),
        channel_scale=channel_scale,
        origin=origin,
    )
    logger.info(
        f"Dataset: train {train_ids} ({len(dataset.train)} frames), "
        f"validation {val_ids}, test {test_ids}"
    )
    return dataset
