from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from proxiskin.commons.errors import InvalidParameter
from proxiskin.stages.avoid_sim.schema import (
    ControllerConfig,
    Intruder,
    KinematicChain,
    ScenarioConfig,
    ScenarioLog,
    ScenarioSummary,
)
from proxiskin.stages.avoid_sim.services.controller import (
    avoidance_command,
    extract_obstacles,
    inversion_params,
    tracking_velocity,
)
from proxiskin.stages.avoid_sim.services.kinematics import (
    clamp_to_limits,
    end_effector_skin,
    forward_kinematics,
    planar_lift_chain,
    point_robot_chain,
    position_jacobian,
    sensor_world_poses,
    solve_position,
)
from proxiskin.stages.cap_physics.schema import (
    CircuitParams,
    CouplingModel,
    EnvironmentModel,
    NoiseBaseline,
    ProtocolConfig,
)
from proxiskin.stages.cap_physics.services.baseline import QUANTIZATION_SIGMA
from proxiskin.stages.cap_physics.services.coupling import coupling_vector
from proxiskin.stages.cap_physics.services.drift import DriftCompensator
from proxiskin.stages.cap_physics.services.protocol import approach_protocol
from proxiskin.stages.cap_physics.services.simulator import SkinSensorModel, simulate_trajectory
from proxiskin.stages.characterize.schema import (
    CharacterizationReport,
    CharacterizeConfig,
    PowerLawFit,
)
from proxiskin.stages.characterize.services import characterize_sensors
from proxiskin.stages.sensor_layout.schema import Electrode


def scenario_chain(config: ScenarioConfig) -> KinematicChain:
    return planar_lift_chain() if config.robot == "planar_lift" else point_robot_chain()


def scenario_skin(config: ScenarioConfig, chain: KinematicChain) -> list[Electrode]:
    return end_effector_skin(
        config.ring_sensors,
        config.ring_radius,
        config.electrode_radius,
        link_frame=chain.end_link,
        tool_offset=chain.tool_offset,
    )


def characterize_ring(
    config: ScenarioConfig = ScenarioConfig(),
    seed: int = 0,
    coupling: CouplingModel = CouplingModel(),
    env: EnvironmentModel = EnvironmentModel(),
    circuit: CircuitParams = CircuitParams(),
    protocol: ProtocolConfig = ProtocolConfig(),
    characterize: CharacterizeConfig = CharacterizeConfig(),
    chain: Optional[KinematicChain] = None,
) -> CharacterizationReport:
    """
    Hover-and-touch recording over the end-effector ring with the robot parked,
    fitted per sensor the same way a generated skin is characterized.
    """
    chain = chain or scenario_chain(config)
    electrodes = scenario_skin(config, chain)
    circuits = [circuit] * len(electrodes)
    model = SkinSensorModel(electrodes, circuits, coupling, env)
    path_seed, noise_seed = (int(s) for s in np.random.SeedSequence([seed, 1]).generate_state(2))
    path = approach_protocol(electrodes, coupling.object_radius, path_seed, protocol)
    trajectory = simulate_trajectory(model, path, noise_seed, protocol.frame_rate)
    report = characterize_sensors([trajectory], electrodes, circuits, coupling, characterize)
    fitted = sum(s.fit is not None for s in report.sensors)
    logger.info(f"Ring characterization: {fitted}/{len(electrodes)} sensors fitted")
    return report


def _intruder_coupling(
    model: SkinSensorModel, centers: np.ndarray, intruders: Sequence[Intruder], t: float
) -> np.ndarray:
    ct = np.zeros(model.sensor_count)
    for intruder in intruders:
        if intruder.active(t):
            ct += coupling_vector(
                centers, model.k, model.coupling.w, intruder.center, intruder.radius, model.coupling.d_floor
            )
    return ct


def _clearance(
    position: np.ndarray, intruders: Sequence[Intruder], t: float, ring_radius: float
) -> float:
    gaps = [
        np.linalg.norm(position - np.asarray(i.center)) - i.radius - ring_radius
        for i in intruders
        if i.active(t)
    ]
    return float(min(gaps)) if gaps else float("nan")


def run_circle_scenario(
    config: ScenarioConfig = ScenarioConfig(),
    gains: ControllerConfig = ControllerConfig(),
    seed: int = 0,
    coupling: CouplingModel = CouplingModel(),
    env: EnvironmentModel = EnvironmentModel(),
    circuit: CircuitParams = CircuitParams(),
    chain: Optional[KinematicChain] = None,
    fits: Optional[Sequence[Optional[PowerLawFit]]] = None,
) -> Tuple[ScenarioLog, ScenarioSummary]:
    """
    Closed-loop circle tracing with skin-informed avoidance.

    The robot first holds its start pose for ``calibration_s`` without intruders to
    measure the noise baseline, then each step: drift the environment, read the
    end-effector ring at its current world pose, drift-compensate, extract obstacles,
    command a Cartesian velocity and integrate the joints through the Jacobian
    pseudo-inverse. ``config.avoidance = False`` tracks the circle blindly.

    Distances are inverted with ``fits``, one characterization fit per ring sensor.
    Without them the ring is characterized first with ``characterize_ring``.
    """
    chain = chain or scenario_chain(config)
    electrodes = scenario_skin(config, chain)
    if fits is None:
        fits = [s.fit for s in characterize_ring(config, seed, coupling, env, circuit, chain=chain).sensors]
    if len(fits) != len(electrodes):
        raise InvalidParameter(
            f"{len(fits)} fits for {len(electrodes)} ring sensors",
            data={"fits": len(fits), "sensors": len(electrodes)},
        )
    circuits = [circuit] * len(electrodes)
    model = SkinSensorModel(electrodes, circuits, coupling, env)
    rng = np.random.default_rng(seed)
    dt = config.dt

    p0, _ = config.desired(0.0)
    q = solve_position(chain, p0, q_init=np.full(chain.dof, 0.5))
    c_env = model.c_env.copy()

    calibration = []
    for _ in range(int(round(config.calibration_s / dt))):
        c_env = model.drift_step(c_env, dt, rng)
        calibration.append(model.read(c_env, rng))
    calibration = np.asarray(calibration, dtype=float).reshape(-1, model.sensor_count)
    mu_n = calibration.mean(axis=0) if len(calibration) else model.baseline_counts()
    sigma_n = np.maximum(calibration.std(axis=0) if len(calibration) else 0.0, QUANTIZATION_SIGMA)
    compensator = DriftCompensator(
        model.sensor_count,
        kp=gains.drift_kp,
        ki=gains.drift_ki,
        adaptation_timescale=gains.drift_timescale,
        initial_baseline=mu_n,
    )
    corrected_baseline = NoiseBaseline(mu_n=np.zeros(model.sensor_count), sigma_n=sigma_n)

    steps = int(round(config.duration_s / dt)) + 1
    t_log = np.arange(steps) * dt
    desired = np.empty((steps, 3))
    actual = np.empty((steps, 3))
    speed = np.empty(steps)
    n_obstacles = np.zeros(steps, dtype=np.int64)
    min_distance = np.full(steps, np.nan)
    clearance = np.full(steps, np.nan)
    intrusion = np.zeros(steps, dtype=np.int64)

    for i, t in enumerate(t_log):
        pose = forward_kinematics(chain, q)
        position = pose.end_effector_position
        world = sensor_world_poses(pose, electrodes)
        centers = world[:, :3, 3]
        normals = world[:, :3, 2]

        if i:
            c_env = model.drift_step(c_env, dt, rng)
        ct = _intruder_coupling(model, centers, config.intruders, t)
        counts = model.read(c_env + ct + model.gamma @ ct, rng)
        signal = compensator.update(counts, dt)
        obstacles = extract_obstacles(
            signal, centers, normals, fits, circuits, corrected_baseline, gains.snr_threshold
        )

        p_des, v_ff = config.desired(t)
        v_des = tracking_velocity(p_des, v_ff, position, gains)
        v_cmd = avoidance_command(v_des, obstacles, position, gains) if config.avoidance else v_des

        desired[i], actual[i] = p_des, position
        speed[i] = np.linalg.norm(v_cmd)
        n_obstacles[i] = len(obstacles)
        if obstacles:
            min_distance[i] = min(o.distance for o in obstacles)
        clearance[i] = _clearance(position, config.intruders, t, config.ring_radius)
        intrusion[i] = int(any(x.active(t) for x in config.intruders))

        q_dot = np.linalg.pinv(position_jacobian(chain, q)) @ v_cmd
        q = clamp_to_limits(chain, q + q_dot * dt)

    log = ScenarioLog(
        t=t_log,
        desired=desired,
        actual=actual,
        speed=speed,
        n_obstacles=n_obstacles,
        min_distance=min_distance,
        clearance=clearance,
        intrusion=intrusion,
    )
    usable = sum(inversion_params(f) is not None for f in fits)
    summary = summarize_scenario(log, config, seed, fitted_sensors=usable)
    logger.info(
        f"Circle scenario ({'avoidance' if config.avoidance else 'blind'}): "
        f"min clearance {summary.min_clearance_m}, min speed in intrusion "
        f"{summary.min_speed_during_intrusion}, post-removal deviation {summary.post_removal_deviation_m}"
    )
    return log, summary


def summarize_scenario(
    log: ScenarioLog, config: ScenarioConfig, seed: int = 0, fitted_sensors: int = 0
) -> ScenarioSummary:
    deviation = config.circle_deviation(log.actual)
    in_intrusion = log.intrusion.astype(bool)
    has_clearance = ~np.isnan(log.clearance)

    post = None
    if config.intruders:
        settle = max(i.t_off for i in config.intruders) + config.period_s
        window = log.t >= settle
        if window.any():
            post = float(deviation[window].max())

    return ScenarioSummary(
        avoidance=config.avoidance,
        seed=seed,
        steps=log.steps,
        cruise_speed=config.cruise_speed,
        max_deviation_m=float(deviation.max()),
        min_clearance_m=float(log.clearance[has_clearance].min()) if has_clearance.any() else None,
        min_speed_during_intrusion=float(log.speed[in_intrusion].min()) if in_intrusion.any() else None,
        post_removal_deviation_m=post,
        detections=int(log.n_obstacles.sum()),
        fitted_sensors=fitted_sensors,
    )
