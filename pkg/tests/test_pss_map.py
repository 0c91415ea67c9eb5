import numpy as np
import pytest

from proxiskin.commons.errors import (
    DegenerateFit,
    DimensionMismatch,
    InvalidParameter,
    TrajectoryTooShort,
    UncalibratedEnsemble,
)
from proxiskin.stages.cap_physics.services.baseline import QUANTIZATION_SIGMA
from proxiskin.stages.pss_map.repository import EnsembleRepository, MapRepository
from proxiskin.stages.pss_map.schema import (
    Calibration,
    DataSplit,
    DatasetConfig,
    Ensemble,
    EnsembleConfig,
    FeatureScaling,
    GridConfig,
    MlpModel,
)
from proxiskin.stages.pss_map.services import (
    bin_predictions,
    calibrate_uncertainty,
    calibrated_sigma,
    evaluate_on_test,
    fit_calibration,
    map_pss,
    member_seeds,
    predict,
    prepare_dataset,
    split_trajectories,
    train_ensemble,
    two_segment_knee,
)
from proxiskin.stages.pss_map.services.ensemble import train_member
from proxiskin.stages.pss_map.services.mlp import init_parameters, loss_and_gradients
from tests.conftest import make_electrode, make_trajectory

CALIBRATION = Calibration(slope=1.0, intercept=0.01, pearson_r=1.0, n_samples=10)
SMALL = EnsembleConfig(members=3, hidden_sizes=[8], dropout=0.0, learning_rate=1.0e-2, epochs=5, batch_size=16)


def constant_ensemble(outputs, calibration=None) -> Ensemble:
    """Members with zero weights, so each always predicts its own bias."""
    members = [
        MlpModel(layer_sizes=[2, 3], weights=[np.zeros((2, 3))], biases=[np.asarray(b, dtype=float)])
        for b in outputs
    ]
    scaling = FeatureScaling(
        channel_scale=np.ones(2),
        feature_low=np.zeros(2),
        feature_high=np.ones(2),
        target_mean=np.zeros(3),
        target_std=np.ones(3),
    )
    return Ensemble(
        config=EnsembleConfig(members=len(members)),
        master_seed=0,
        member_seeds=list(range(len(members))),
        members=members,
        scaling=scaling,
        origin=np.zeros(3),
        origin_frame="link0",
        calibration=calibration,
    )


def split_of(features, targets) -> DataSplit:
    n = len(features)
    return DataSplit(
        features=features,
        targets=targets,
        trajectory_ids=np.zeros(n, dtype=int),
        frame_ids=np.arange(n),
    )


def test_gradients_match_finite_differences():
    rng = np.random.default_rng(0)
    weights, biases = init_parameters([5, 4, 4, 3], rng)
    X = rng.normal(size=(3, 5))
    Y = rng.normal(size=(3, 3))
    _, grad_w, grad_b = loss_and_gradients(weights, biases, X, Y)

    eps = 1.0e-6
    for params, grads in ((weights, grad_w), (biases, grad_b)):
        for p, g in zip(params, grads):
            for idx in np.ndindex(p.shape):
                saved = p[idx]
                p[idx] = saved + eps
                up = loss_and_gradients(weights, biases, X, Y)[0]
                p[idx] = saved - eps
                down = loss_and_gradients(weights, biases, X, Y)[0]
                p[idx] = saved
                numeric = (up - down) / (2.0 * eps)
                assert abs(numeric - g[idx]) <= 1.0e-5 * (abs(numeric) + abs(g[idx])) + 1.0e-9


def test_opposite_members_spread():
    ensemble = constant_ensemble([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    prediction = predict(ensemble, np.array([0.3, 0.7]))
    assert np.allclose(prediction.mu_p, [[0.0, 0.0, 0.0]])
    assert prediction.sigma_raw[0] == pytest.approx(1.0)
    assert prediction.sigma_cal[0] == pytest.approx(1.0)


def test_identical_members_have_no_spread():
    ensemble = constant_ensemble([[0.1, 0.2, 0.3]] * 4)
    prediction = predict(ensemble, np.zeros((5, 2)))
    assert np.allclose(prediction.mu_p, [0.1, 0.2, 0.3])
    assert np.allclose(prediction.sigma_raw, 0.0)


def test_predict_checks_feature_width():
    with pytest.raises(DimensionMismatch):
        predict(constant_ensemble([[0.0, 0.0, 0.0]]), np.zeros((2, 3)))


def test_calibration_recovers_line():
    sigma = np.linspace(0.01, 0.1, 20)
    calibration = fit_calibration(sigma, 2.0 * sigma + 0.01)
    assert calibration.slope == pytest.approx(2.0)
    assert calibration.intercept == pytest.approx(0.01)
    assert calibration.pearson_r == pytest.approx(1.0)
    assert calibration.n_samples == 20


def test_calibration_needs_varying_spread():
    with pytest.raises(DegenerateFit):
        fit_calibration(np.full(10, 0.05), np.linspace(0.0, 0.1, 10))


def test_calibrate_uncertainty_on_constant_spread():
    ensemble = constant_ensemble([[0.1, 0.0, 0.0], [-0.1, 0.0, 0.0]])
    validation = split_of(np.zeros((4, 2)), np.zeros((4, 3)))
    with pytest.raises(DegenerateFit):
        calibrate_uncertainty(ensemble, validation)
    assert ensemble.calibration is None


def test_calibrated_sigma_is_clamped():
    calibration = Calibration(slope=1.0, intercept=-0.05, pearson_r=1.0, n_samples=2)
    assert calibrated_sigma(calibration, np.array([0.01, 0.1])).tolist() == pytest.approx([0.0, 0.05])
    assert calibrated_sigma(None, np.array([0.2])).tolist() == [0.2]


def test_empty_grid():
    grid = map_pss(constant_ensemble([[0.0, 0.0, 0.0]], CALIBRATION), GridConfig(samples=0))
    assert len(grid.counts) == 0
    assert grid.samples == 0


def test_constant_ensemble_fills_one_cell():
    ensemble = constant_ensemble([[0.05, 0.0, 0.1]] * 2, CALIBRATION)
    grid = map_pss(ensemble, GridConfig(samples=500, chunk=128), seed=1)
    assert grid.counts.tolist() == [500]
    assert grid.mean_sigma[0] == pytest.approx(0.01)
    assert np.allclose(grid.positions[0], [0.05, 0.0, 0.1], atol=1e-9)
    assert grid.usable.all()


def test_grid_counts_predictions_outside():
    ensemble = constant_ensemble([[5.0, 0.0, 0.0]], CALIBRATION)
    grid = map_pss(ensemble, GridConfig(samples=100))
    assert grid.counts.sum() + grid.out_of_extent == grid.samples == 100
    assert grid.out_of_extent == 100


def test_map_requires_calibration():
    with pytest.raises(UncalibratedEnsemble):
        map_pss(constant_ensemble([[0.0, 0.0, 0.0]]), GridConfig(samples=10))


def test_bin_predictions_averages_sigma():
    positions = np.array([[0.0, 0.0, 0.0], [0.002, -0.001, 0.0], [0.1, 0.0, 0.0], [9.0, 0.0, 0.0]])
    sigma = np.array([0.02, 0.04, 0.06, 0.5])
    grid = bin_predictions(positions, sigma, np.array([1.0, 2.0, 3.0]), GridConfig())
    assert grid.counts.tolist() == [2, 1]
    assert grid.mean_sigma.tolist() == pytest.approx([0.03, 0.06])
    assert grid.out_of_extent == 1
    assert np.allclose(grid.positions[0], [1.0, 2.0, 3.0])


def test_split_six_trajectories():
    train, val, test = split_trajectories(6, (0.7, 0.15, 0.15), seed=3)
    assert (len(train), len(val), len(test)) == (4, 1, 1)
    assert sorted(train + val + test) == list(range(6))


def test_split_three_trajectories():
    train, val, test = split_trajectories(3, (0.7, 0.15, 0.15), seed=0)
    assert (len(train), len(val), len(test)) == (1, 1, 1)


def test_split_two_trajectories_fails():
    with pytest.raises(InvalidParameter):
        split_trajectories(2, (0.7, 0.15, 0.15), seed=0)


def test_split_is_seeded():
    assert split_trajectories(10, (0.7, 0.15, 0.15), 4) == split_trajectories(10, (0.7, 0.15, 0.15), 4)


def recordings(count: int = 4, frames: int = 100):
    rng = np.random.default_rng(7)
    trajectories = []
    for _ in range(count):
        positions = rng.uniform(-0.1, 0.1, (frames, 3))
        counts = rng.integers(200, 210, (frames, 2)) + np.arange(frames)[:, None]
        trajectories.append(make_trajectory(positions, counts))
    return trajectories


def test_dataset_features_and_targets():
    trajectories = recordings()
    betas = np.array([1.0e13, 2.0e13])
    origin = np.array([0.01, 0.02, 0.03])
    dataset = prepare_dataset(trajectories, betas, origin, DatasetConfig(split=(0.5, 0.25, 0.25)), seed=1)

    assert len(dataset.train) + len(dataset.validation) + len(dataset.test) == 400
    for split in (dataset.train, dataset.validation, dataset.test):
        for tid in split.trajectories:
            rows = split.trajectory_ids == tid
            head = rows & (split.frame_ids < 40)
            assert np.allclose(split.features[head].mean(axis=0), 0.0, atol=1e-25)
            expected = trajectories[tid].object_positions[split.frame_ids[rows]] - origin
            assert np.allclose(split.targets[rows], expected)
    assert np.all(dataset.channel_scale >= QUANTIZATION_SIGMA / betas)


def test_dataset_rejects_short_recording():
    trajectories = recordings()
    trajectories[2] = make_trajectory(np.zeros((20, 3)), np.full((20, 2), 200))
    with pytest.raises(TrajectoryTooShort):
        prepare_dataset(trajectories, np.ones(2), np.zeros(3), DatasetConfig(), seed=0)


def test_member_seeds_are_distinct_and_reproducible():
    seeds = member_seeds(7, 50)
    assert len(set(seeds)) == 50
    assert seeds == member_seeds(7, 50)
    assert seeds != member_seeds(8, 50)


def regression_split(n: int = 300) -> DataSplit:
    rng = np.random.default_rng(2)
    features = rng.uniform(0.0, 1.0e-12, (n, 2))
    targets = np.column_stack([features * 1.0e11, features.sum(axis=1) * 5.0e10])
    return split_of(features, targets)


def test_single_member_loss_decreases():
    config = EnsembleConfig(members=1, hidden_sizes=[16], dropout=0.0, learning_rate=1.0e-2, epochs=30, batch_size=32)
    rng = np.random.default_rng(0)
    X = rng.normal(size=(200, 3))
    Y = X @ rng.normal(size=(3, 2))
    _, history = train_member(X, Y, config, seed=5)
    assert len(history) == 30
    assert history[-1] < 0.5 * history[0]


def test_training_is_deterministic():
    split = regression_split()
    a = train_ensemble(split, SMALL, master_seed=11, channel_scale=np.full(2, 1.0e-13), origin=np.zeros(3))
    b = train_ensemble(split, SMALL, master_seed=11, channel_scale=np.full(2, 1.0e-13), origin=np.zeros(3))
    assert a.member_seeds == b.member_seeds
    for ma, mb in zip(a.members, b.members):
        for wa, wb in zip(ma.weights, mb.weights):
            assert np.array_equal(wa, wb)
    assert len(a.loss_history) == 3
    assert all(len(h) == SMALL.epochs for h in a.loss_history)


def test_ensemble_archive_round_trip(tmp_path):
    ensemble = train_ensemble(regression_split(), SMALL, 3, np.full(2, 1.0e-13), np.zeros(3))
    repo = EnsembleRepository(tmp_path)
    repo.save_ensemble(ensemble)
    loaded = repo.load()
    features = regression_split().features[:10]
    assert np.allclose(predict(loaded, features).mu_p, predict(ensemble, features).mu_p)
    assert loaded.config == SMALL


def test_evaluate_on_test():
    z = np.linspace(0.02, 0.3, 29)
    targets = np.column_stack([np.zeros(29), np.zeros(29), z])
    test = split_of(np.zeros((29, 2)), targets)
    ensemble = constant_ensemble([[0.0, 0.0, 0.0]], CALIBRATION)
    electrodes = [make_electrode(0), make_electrode(1, center=(0.5, 0.0, 0.0))]
    metrics = evaluate_on_test(ensemble, test, electrodes, [0.05, None], object_radius=0.0125)

    assert metrics.frames == 29
    assert sum(b.count for b in metrics.bins) == 29
    assert metrics.median_error_m == pytest.approx(np.median(z))
    assert metrics.pearson_error_sigma == 0.0
    assert metrics.median_error_in_range_m < metrics.median_error_out_of_range_m
    assert metrics.out_of_range_ratio > 1.0


def test_map_repository_writes_table(tmp_path):
    ensemble = constant_ensemble([[0.05, 0.0, 0.1]], CALIBRATION)
    grid = map_pss(ensemble, GridConfig(samples=50))
    paths = MapRepository(tmp_path).save(grid)
    lines = paths["table"].read_text().splitlines()
    assert lines[0] == "x,y,z,mean_sigma,count"
    assert len(lines) == 2
    assert MapRepository(tmp_path).load_grid().counts.tolist() == [50]


def test_knee_of_hinge():
    x = np.linspace(0.0, 0.2, 11)
    y = np.where(x <= 0.1, 0.01, 0.01 + (x - 0.1))
    assert two_segment_knee(x, y) == pytest.approx(0.1)


def test_knee_needs_four_points():
    assert two_segment_knee(np.array([0.0, 0.1, 0.2]), np.array([0.0, 0.0, 1.0])) is None
