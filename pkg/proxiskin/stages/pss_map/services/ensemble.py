from typing import List, Optional

import numpy as np
from loguru import logger
from scipy import stats

from proxiskin.commons.enums import BootstrapMode
from proxiskin.commons.errors import (
    DegenerateFit,
    DimensionMismatch,
    DivergedMember,
    InvalidParameter,
)
from proxiskin.stages.pss_map.schema import (
    Calibration,
    DataSplit,
    Ensemble,
    EnsembleConfig,
    FeatureScaling,
    MlpModel,
    PssPrediction,
)
from proxiskin.stages.pss_map.services.mlp import (
    AdamOptimizer,
    init_parameters,
    loss_and_gradients,
    mlp_predict,
    to_model,
)


def member_seeds(master_seed: int, members: int) -> List[int]:
    """Independent per-member seeds spawned from the master seed."""
    return [int(s) for s in np.random.SeedSequence(master_seed).generate_state(members)]


def bootstrap_indices(
    n: int, rng: np.random.Generator, mode: BootstrapMode, fraction: float = 0.5
) -> np.ndarray:
    if mode is BootstrapMode.CLASSIC:
        return rng.integers(0, n, size=n)
    size = max(1, int(round(fraction * n)))
    return np.sort(rng.choice(n, size=size, replace=False))


def fit_scaling(train: DataSplit, channel_scale: np.ndarray) -> FeatureScaling:
    std = train.targets.std(axis=0)
    return FeatureScaling(
        channel_scale=channel_scale,
        feature_low=train.features.min(axis=0),
        feature_high=train.features.max(axis=0),
        target_mean=train.targets.mean(axis=0),
        target_std=np.where(std > 0.0, std, 1.0),
    )


def train_member(
    X: np.ndarray,
    Y: np.ndarray,
    config: EnsembleConfig,
    seed: int,
    member_index: int = 0,
) -> tuple[MlpModel, List[float]]:
    """
    Train one network on its own bootstrap draw of ``(X, Y)``.

    Returns the trained model and the mean training loss of every epoch.

    Raises:
        DivergedMember: a batch loss is not finite
    """
    rng = np.random.default_rng(seed)
    sizes = [X.shape[1], *config.hidden_sizes, Y.shape[1]]
    weights, biases = init_parameters(sizes, rng)
    params = [*weights, *biases]
    optimizer = AdamOptimizer(config.learning_rate, config.beta1, config.beta2, config.epsilon)
    subset = bootstrap_indices(len(X), rng, config.bootstrap, config.subset_fraction)
    n_layers = len(weights)

    history = []
    for epoch in range(config.epochs):
        order = subset[rng.permutation(len(subset))]
        batch_losses, batch_sizes = [], []
        for start in range(0, len(order), config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grad_w, grad_b = loss_and_gradients(
                params[:n_layers], params[n_layers:], X[batch], Y[batch], config.dropout, rng
            )
            if not np.isfinite(loss):
                raise DivergedMember(member_index, seed, epoch)
            optimizer.step(params, [*grad_w, *grad_b])
            batch_losses.append(loss)
            batch_sizes.append(len(batch))
        history.append(float(np.average(batch_losses, weights=batch_sizes)))
    if not all(np.all(np.isfinite(p)) for p in params):
        raise DivergedMember(member_index, seed, config.epochs - 1)
    return to_model(params[:n_layers], params[n_layers:], config.dropout), history


def train_ensemble(
    train: DataSplit,
    config: EnsembleConfig,
    master_seed: int,
    channel_scale: np.ndarray,
    origin: np.ndarray,
    origin_frame: str = "link0",
) -> Ensemble:
    """
    Bootstrap ensemble of position regressors.

    Inputs are squashed with ``asinh(C / channel_scale)``, targets standardized
    per axis; both transforms are stored on the ensemble. Members train one
    after another in index order.
    """
    if not len(train):
        raise InvalidParameter("training split is empty")
    scaling = fit_scaling(train, np.asarray(channel_scale, dtype=float))
    X = scaling.transform(train.features)
    Y = scaling.targets_to_model(train.targets)
    seeds = member_seeds(master_seed, config.members)

    members, histories = [], []
    for index, seed in enumerate(seeds):
        model, history = train_member(X, Y, config, seed, index)
        members.append(model)
        histories.append(history)
        logger.debug(f"Member {index} (seed {seed}): loss {history[0]:.4g} -> {history[-1]:.4g}")
    logger.info(
        f"Trained {config.members} members on {len(train)} frames, "
        f"mean final loss {np.mean([h[-1] for h in histories]):.4g}"
    )
    return Ensemble(
        config=config,
        master_seed=master_seed,
        member_seeds=seeds,
        members=members,
        scaling=scaling,
        origin=origin,
        origin_frame=origin_frame,
        loss_history=histories,
    )


def predict(ensemble: Ensemble, features: np.ndarray) -> PssPrediction:
    """
    Ensemble mean and spread for one feature vector or a batch of them.

    ``sigma_raw`` is the norm of the per-axis population std across members;
    ``sigma_cal`` applies the stored calibration, or equals ``sigma_raw``
    when the ensemble is not calibrated yet.

    Raises:
        DimensionMismatch: feature width differs from the network input
    """
    features = np.atleast_2d(np.asarray(features, dtype=float))
    if features.ndim != 2 or features.shape[1] != ensemble.input_dim:
        raise DimensionMismatch(
            f"Expected {ensemble.input_dim} features per row, got shape {features.shape}",
            data={"expected": ensemble.input_dim, "shape": list(features.shape)},
        )
    X = ensemble.scaling.transform(features)
    outputs = np.stack(
        [ensemble.scaling.targets_from_model(mlp_predict(m, X)) for m in ensemble.members]
    )
    mu = outputs.mean(axis=0)
    sigma_raw = np.linalg.norm(outputs.std(axis=0), axis=-1)
    return PssPrediction(mu_p=mu, sigma_raw=sigma_raw, sigma_cal=calibrated_sigma(ensemble.calibration, sigma_raw))


def calibrated_sigma(calibration: Optional[Calibration], sigma_raw: np.ndarray) -> np.ndarray:
    if calibration is None:
        return sigma_raw
    return np.maximum(calibration.slope * sigma_raw + calibration.intercept, 0.0)


def fit_calibration(sigma_raw: np.ndarray, errors: np.ndarray) -> Calibration:
    """
    Least-squares line of prediction error on raw spread.

    Raises:
        DegenerateFit: the spread does not vary
    """
    sigma_raw = np.asarray(sigma_raw, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if len(sigma_raw) < 2 or np.var(sigma_raw) <= 1e-24:
        raise DegenerateFit(
            "Ensemble spread is constant on the validation split, cannot calibrate",
            data={"samples": len(sigma_raw)},
        )
    result = stats.linregress(sigma_raw, errors)
    if result.slope < 0.0:
        logger.warning(f"Negative calibration slope {result.slope:.4g}: spread anti-correlates with error")
    return Calibration(
        slope=float(result.slope),
        intercept=float(result.intercept),
        pearson_r=float(result.rvalue),
        n_samples=len(sigma_raw),
    )


def prediction_errors(ensemble: Ensemble, split: DataSplit) -> tuple[np.ndarray, PssPrediction]:
    prediction = predict(ensemble, split.features)
    return np.linalg.norm(prediction.mu_p - split.targets, axis=1), prediction


def calibrate_uncertainty(ensemble: Ensemble, validation: DataSplit) -> Ensemble:
    """Copy of ``ensemble`` carrying the spread-to-error calibration fitted on ``validation``."""
    if not len(validation):
        raise InvalidParameter("validation split is empty")
    errors, prediction = prediction_errors(ensemble, validation)
    calibration = fit_calibration(prediction.sigma_raw, errors)
    logger.info(
        f"Calibration: e_p = {calibration.slope:.4g} * sigma + {calibration.intercept:.4g} "
        f"(r = {calibration.pearson_r:.3f}, n = {calibration.n_samples})"
    )
    return ensemble.model_copy(update={"calibration": calibration})
