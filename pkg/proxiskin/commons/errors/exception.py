from typing import Any, Dict, Optional


class ProxiskinException(Exception):
    """Base exception for toolkit errors."""

    error_code = "proxiskin_error"

    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        error_code: Optional[str] = None,
        data: Optional[Dict[str, Any]] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code or type(self).error_code
        self.data = data
        super().__init__(message)


class InvalidParameter(ProxiskinException, ValueError):
    """A precondition on an operation argument does not hold."""

    error_code = "invalid_parameter"


class ConfigError(ProxiskinException):
    error_code = "config_error"


class MissingArtifact(ProxiskinException):
    """An upstream stage output is not where the stage expects it."""

    error_code = "missing_artifact"

    def __init__(self, path: str, message: Optional[str] = None):
        super().__init__(
            message or f"Missing artifact: {path}",
            exit_code=2,
            data={"path": str(path)},
        )
        self.path = str(path)


# mesh_core


class EmptyRegion(ProxiskinException):
    error_code = "empty_region"


class DegenerateNormal(ProxiskinException):
    error_code = "degenerate_normal"


class TooFewPoints(ProxiskinException):
    error_code = "too_few_points"


# sensor_layout / wire_router


class DepthExceedsThickness(ProxiskinException):
    error_code = "depth_exceeds_thickness"


class LayersExceedThickness(ProxiskinException):
    error_code = "layers_exceed_thickness"


class Unroutable(ProxiskinException):
    error_code = "unroutable"

    def __init__(self, electrode_id: int, message: Optional[str] = None):
        super().__init__(
            message or f"Electrode {electrode_id} cannot reach any free port",
            data={"electrode_id": electrode_id},
        )
        self.electrode_id = electrode_id


# cap_physics / characterize


class BelowBaseline(ProxiskinException):
    error_code = "below_baseline"


class EmptyApproach(ProxiskinException):
    error_code = "empty_approach"


class TooFewSamples(ProxiskinException):
    error_code = "too_few_samples"


class NoDetection(ProxiskinException):
    error_code = "no_detection"


class InsufficientSensors(ProxiskinException):
    error_code = "insufficient_sensors"


# pss_map


class TrajectoryTooShort(ProxiskinException):
    error_code = "trajectory_too_short"


class DivergedMember(ProxiskinException):
    error_code = "diverged_member"

    def __init__(self, member_index: int, member_seed: int, epoch: int):
        super().__init__(
            f"Ensemble member {member_index} diverged in epoch {epoch} "
            f"(reproduce with member seed {member_seed})",
            data={
                "member_index": member_index,
                "member_seed": member_seed,
                "epoch": epoch,
            },
        )
        self.member_seed = member_seed


class DimensionMismatch(ProxiskinException):
    error_code = "dimension_mismatch"


class DegenerateFit(ProxiskinException):
    error_code = "degenerate_fit"


class UncalibratedEnsemble(ProxiskinException):
    error_code = "uncalibrated_ensemble"


# avoid_sim


class JointLimit(ProxiskinException):
    error_code = "joint_limit"
