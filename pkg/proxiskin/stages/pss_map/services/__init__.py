from proxiskin.stages.pss_map.services.dataset import prepare_dataset, split_trajectories
from proxiskin.stages.pss_map.services.ensemble import (
    calibrate_uncertainty,
    calibrated_sigma,
    fit_calibration,
    member_seeds,
    predict,
    prediction_errors,
    train_ensemble,
)
from proxiskin.stages.pss_map.services.mapping import (
    bin_predictions,
    evaluate_on_test,
    map_pss,
    two_segment_knee,
)

__all__ = [
    "bin_predictions",
    "calibrate_uncertainty",
    "calibrated_sigma",
    "evaluate_on_test",
    "fit_calibration",
    "map_pss",
    "member_seeds",
    "predict",
    "prediction_errors",
    "prepare_dataset",
    "split_trajectories",
    "train_ensemble",
    "two_segment_knee",
]
