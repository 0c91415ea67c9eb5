import numpy as np
import pytest

from proxiskin.commons.enums import JointType
from proxiskin.commons.errors import InvalidParameter, JointLimit
from proxiskin.commons.geometry import translation
from proxiskin.stages.avoid_sim.repository import ScenarioRepository
from proxiskin.stages.avoid_sim.schema import (
    ControllerConfig,
    Joint,
    KinematicChain,
    ObstacleEstimate,
    ScenarioConfig,
)
from proxiskin.stages.avoid_sim.services import (
    avoidance_command,
    characterize_ring,
    end_effector_skin,
    extract_obstacles,
    forward_kinematics,
    inversion_params,
    planar_lift_chain,
    point_robot_chain,
    run_circle_scenario,
    sensor_world_poses,
    solve_position,
    speed_scaling,
    tracking_velocity,
)
from proxiskin.stages.cap_physics.schema import CircuitParams, CouplingParams, NoiseBaseline, ProtocolConfig
from proxiskin.stages.cap_physics.services.protocol import approach_protocol
from proxiskin.stages.characterize.schema import PowerLawFit

GAINS = ControllerConfig()


def obstacle(distance: float, point, sensor_id: int = 0) -> ObstacleEstimate:
    return ObstacleEstimate(
        sensor_id=sensor_id, distance=distance, world_point=np.asarray(point, dtype=float), confidence=10.0
    )


def fit(w: float = 0.7, k: float = 2.0e-12, sensor_id: int = 0) -> PowerLawFit:
    return PowerLawFit(sensor_id=sensor_id, k=k, w=w, pearson_r=-0.99, n_samples=50, w_in_band=0.4 <= w < 1.0)


def test_prismatic_chain_sums_translations():
    pose = forward_kinematics(point_robot_chain(), [0.1, 0.2, 0.3])
    assert np.allclose(pose.end_effector_position, [0.1, 0.2, 0.3])
    assert np.allclose(pose.links["y_stage"][:3, 3], [0.1, 0.2, 0.0])


def test_revolute_quarter_turn():
    chain = KinematicChain(
        joints=[Joint(name="j", child_link="arm", joint_type=JointType.REVOLUTE, axis=np.array([0.0, 0.0, 1.0]))],
        tool_offset=translation([1.0, 0.0, 0.0]),
    )
    pose = forward_kinematics(chain, [np.pi / 2])
    assert np.allclose(pose.end_effector_position, [0.0, 1.0, 0.0], atol=1e-12)


def test_joint_limits_are_enforced():
    with pytest.raises(JointLimit):
        forward_kinematics(point_robot_chain(reach=1.0), [2.0, 0.0, 0.0])


def test_joint_vector_shape():
    with pytest.raises(InvalidParameter):
        forward_kinematics(point_robot_chain(), [0.0, 0.0])


def test_planar_arm_reaches_target():
    chain = planar_lift_chain()
    target = np.array([0.4, 0.2, 0.3])
    q = solve_position(chain, target, q_init=np.array([0.2, 0.3, 0.5]))
    assert np.allclose(forward_kinematics(chain, q).end_effector_position, target, atol=1e-6)


def test_ring_sensor_world_poses():
    chain = point_robot_chain()
    electrodes = end_effector_skin(count=4, ring_radius=0.04, link_frame=chain.end_link)
    pose = forward_kinematics(chain, [0.1, 0.2, 0.3])
    world = sensor_world_poses(pose, electrodes)
    assert world.shape == (4, 4, 4)
    assert np.allclose(world[0, :3, 3], [0.14, 0.2, 0.3])
    assert np.allclose(world[0, :3, 2], [1.0, 0.0, 0.0])
    assert np.allclose(world[1, :3, 2], [0.0, 1.0, 0.0], atol=1e-12)


def test_no_obstacles_keeps_velocity():
    v = np.array([0.1, -0.05, 0.0])
    assert np.array_equal(avoidance_command(v, [], np.zeros(3), GAINS), v)
    assert speed_scaling([], GAINS) == 1.0


def test_obstacle_at_safe_distance_is_ignored():
    v = np.array([0.1, 0.0, 0.0])
    command = avoidance_command(v, [obstacle(GAINS.d_safe, [0, 0, 0.1])], np.zeros(3), GAINS)
    assert np.allclose(command, v)


def test_half_safe_distance_repulsion():
    v = np.array([0.1, 0.0, 0.0])
    command = avoidance_command(v, [obstacle(0.05, [0, 0, 0.05])], np.zeros(3), GAINS)
    assert np.allclose(command, [0.05, 0.0, -0.25])


def test_repulsion_sums_over_obstacles():
    obstacles = [obstacle(0.05, [0, 0, 0.05]), obstacle(0.05, [0, 0.05, 0], 1)]
    command = avoidance_command(np.zeros(3), obstacles, np.zeros(3), GAINS)
    assert np.allclose(command, [0.0, -0.25, -0.25])


def test_speed_scaling_floor():
    assert speed_scaling([obstacle(0.001, [0, 0, 0.001])], GAINS) == GAINS.s_min


def test_tracking_velocity_is_clamped():
    v = tracking_velocity(np.array([1.0, 0.0, 0.0]), np.zeros(3), np.zeros(3), GAINS)
    assert np.linalg.norm(v) == pytest.approx(GAINS.max_speed)
    small = tracking_velocity(np.array([0.01, 0.0, 0.0]), np.zeros(3), np.zeros(3), GAINS)
    assert np.allclose(small, [0.05, 0.0, 0.0])


def test_inversion_params_from_fit():
    params = inversion_params(fit(w=0.7))
    assert params == CouplingParams(k=2.0e-12, w=0.7)


@pytest.mark.parametrize("w", [-0.2, 0.0, 1.6])
def test_inversion_rejects_unphysical_exponent(w):
    assert inversion_params(fit(w=w)) is None
    assert inversion_params(None) is None


def test_extract_obstacles():
    circuit = CircuitParams()
    fits = [fit(sensor_id=0), fit(sensor_id=1)]
    baseline = NoiseBaseline(mu_n=np.array([300.0, 300.0]), sigma_n=np.array([2.0, 2.0]))
    centers = np.array([[0.0, 0.0, 0.0], [0.1, 0.0, 0.0]])
    normals = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]])

    quiet = extract_obstacles(np.array([300, 301]), centers, normals, fits, [circuit] * 2, baseline)
    assert quiet == []

    signal = np.rint(2.0e-12 / 0.05**0.7 * circuit.beta)
    (found,) = extract_obstacles(
        np.array([300 + signal, 300]), centers, normals, fits, [circuit] * 2, baseline
    )
    assert found.sensor_id == 0
    assert found.distance == pytest.approx(0.05, rel=0.01)
    assert np.allclose(found.world_point, [0.0, 0.0, found.distance])


def test_extract_skips_unfitted_sensor():
    baseline = NoiseBaseline(mu_n=np.array([300.0, 300.0]), sigma_n=np.array([2.0, 2.0]))
    found = extract_obstacles(
        np.array([500, 500]),
        np.zeros((2, 3)),
        np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]]),
        [None, fit(w=-0.3, sensor_id=1)],
        [CircuitParams()] * 2,
        baseline,
    )
    assert found == []


def test_scenario_needs_one_fit_per_ring_sensor():
    config = ScenarioConfig(intruders=[], duration_s=1.0)
    with pytest.raises(InvalidParameter):
        run_circle_scenario(config, fits=[fit()] * (config.ring_sensors - 1))


def test_ring_protocol_holds_clear_of_every_sensor():
    chain = point_robot_chain()
    electrodes = end_effector_skin(count=8, ring_radius=0.04, link_frame=chain.end_link)
    protocol = ProtocolConfig()
    path = approach_protocol(electrodes, 0.0125, seed=0, config=protocol)
    centers = np.array([e.center for e in electrodes])
    gaps = np.linalg.norm(path.positions[:, None, :] - centers[None], axis=2).min(axis=1)
    assert gaps[0] >= protocol.far_distance[0]
    assert gaps[-1] >= protocol.far_distance[0]
    assert np.isfinite(path.positions).all()


@pytest.mark.slow
def test_ring_characterization_recovers_distance_law():
    report = characterize_ring(ScenarioConfig(), seed=0)
    fits = [s.fit for s in report.sensors if s.fit is not None]
    assert len(report.sensors) == ScenarioConfig().ring_sensors
    assert len(fits) >= len(report.sensors) // 2
    assert all(inversion_params(f) is not None for f in fits)
    assert np.median([f.w for f in fits]) == pytest.approx(0.7, abs=0.15)


@pytest.mark.slow
def test_scenario_without_intruder_tracks_circle():
    _, summary = run_circle_scenario(ScenarioConfig(intruders=[], duration_s=10.0), seed=2)
    assert summary.max_deviation_m < 0.001
    assert summary.min_clearance_m is None
    assert summary.min_speed_during_intrusion is None


@pytest.mark.slow
def test_blind_run_collides():
    _, summary = run_circle_scenario(ScenarioConfig(avoidance=False), seed=0)
    assert summary.min_clearance_m < 0.0


@pytest.mark.slow
def test_avoidance_keeps_clearance_and_recovers(tmp_path):
    log, summary = run_circle_scenario(ScenarioConfig(), seed=0)
    assert summary.min_clearance_m > 0.0
    assert summary.detections > 0
    assert summary.min_speed_during_intrusion < summary.cruise_speed
    assert summary.post_removal_deviation_m < 0.005
    assert summary.fitted_sensors > 0

    repo = ScenarioRepository(tmp_path)
    paths = repo.save(log, summary)
    assert paths["log"].name == "log.csv"
    assert repo.load_summary() == summary
    loaded = repo.load_log()
    assert loaded.steps == log.steps
    assert np.array_equal(loaded.n_obstacles, log.n_obstacles)


@pytest.fixture(scope="module")
def ring_fits():
    return [s.fit for s in characterize_ring(ScenarioConfig(), seed=0).sensors]


@pytest.mark.slow
def test_avoidance_slows_below_cruise(ring_fits):
    config = ScenarioConfig()
    _, guarded = run_circle_scenario(config, seed=0, fits=ring_fits)
    _, blind = run_circle_scenario(config.model_copy(update={"avoidance": False}), seed=0, fits=ring_fits)
    assert guarded.min_clearance_m > blind.min_clearance_m
    assert guarded.min_speed_during_intrusion < 0.8 * guarded.cruise_speed
    assert guarded.post_removal_deviation_m < 0.005


@pytest.mark.slow
def test_stronger_repulsion_keeps_more_clearance(ring_fits):
    clearances = [
        run_circle_scenario(ScenarioConfig(), ControllerConfig(k_rep=k_rep), seed=0, fits=ring_fits)[1].min_clearance_m
        for k_rep in (0.125, 0.25, 0.5, 1.0, 2.0)
    ]
    assert all(b >= a - 1e-3 for a, b in zip(clearances[:-1], clearances[1:]))
    assert clearances[-1] > clearances[0]
