import json

import numpy as np
import pytest

from proxiskin.commons.errors import BelowBaseline, InvalidParameter, MissingArtifact
from proxiskin.stages.cap_physics.repository import PathRepository
from proxiskin.stages.cap_physics.schema import (
    CircuitParams,
    CouplingModel,
    CouplingParams,
    EnvironmentModel,
    ObjectPath,
)
from proxiskin.stages.cap_physics.services import (
    SkinSensorModel,
    approach_protocol,
    capacitance_from_counts,
    counts_from_capacitance,
    coupling_capacitance,
    drift_compensator,
    estimate_distance,
    noise_baseline,
    parasitic_matrix,
    simulate_trajectory,
)
from proxiskin.stages.cap_physics.services.baseline import QUANTIZATION_SIGMA
from tests.conftest import make_electrode, make_trajectory

CIRCUIT = CircuitParams(n=16, f=1.0e6, R=1.0e6)


def parked_path(position, duration: float = 3.0) -> ObjectPath:
    return ObjectPath(times=np.array([0.0, duration]), positions=np.array([position, position], dtype=float))


def test_beta_is_n_f_r_ln2():
    assert CIRCUIT.beta == pytest.approx(16 * 1.0e6 * 1.0e6 * np.log(2.0))


def test_coupling_vanishes_far_away():
    cp = CouplingParams(k=1.0e-12, w=1.0)
    c = coupling_capacitance(make_electrode(), np.array([10.0, 0.0, 0.0]), 0.0, cp)
    assert c == pytest.approx(1.0e-13)


def test_parallel_plate_special_case():
    epsilon, area = 8.854e-12, 4.0e-4
    cp = CouplingParams.parallel_plate(epsilon, area)
    c = coupling_capacitance(make_electrode(), np.array([0.0, 0.0, 0.012]), 0.002, cp)
    assert c == pytest.approx(epsilon * area / 0.01)


def test_contact_saturates():
    cp = CouplingParams(k=2.0e-12, w=0.7)
    c = coupling_capacitance(make_electrode(), np.zeros(3), 0.0125, cp)
    assert c == pytest.approx(2.0e-12 / 1.0e-4**0.7)


def test_coupling_decreases_with_distance():
    cp = CouplingParams(k=2.0e-12, w=0.7)
    distances = np.linspace(0.001, 0.5, 50)
    values = [coupling_capacitance(make_electrode(), np.array([0, 0, d]), 0.0, cp) for d in distances]
    assert np.all(np.diff(values) < 0.0)


def test_parasitics_off():
    electrodes = [make_electrode(0), make_electrode(1, center=(0.03, 0, 0))]
    gamma = parasitic_matrix(electrodes, EnvironmentModel(parasitic_gain=0.0))
    assert np.array_equal(gamma, np.zeros((2, 2)))


def test_parasitic_decay_at_one_length():
    env = EnvironmentModel(parasitic_gain=0.05, parasitic_decay=0.04)
    electrodes = [make_electrode(0), make_electrode(1, center=(0.04, 0, 0))]
    gamma = parasitic_matrix(electrodes, env)
    assert gamma[0, 1] == pytest.approx(0.05 / np.e)


def test_parasitic_matrix_symmetric_zero_diagonal():
    rng = np.random.default_rng(0)
    electrodes = [make_electrode(i, center=rng.uniform(0, 0.1, 3)) for i in range(6)]
    gamma = parasitic_matrix(electrodes, EnvironmentModel())
    assert np.allclose(gamma, gamma.T)
    assert np.all(np.diag(gamma) == 0.0)


def test_counts_from_capacitance():
    assert counts_from_capacitance(0.0, CIRCUIT) == 0
    assert counts_from_capacitance(100e-12, CIRCUIT) == 1109


def test_capacitance_from_counts():
    assert capacitance_from_counts(0, CIRCUIT) == 0.0
    assert capacitance_from_counts(1109, CIRCUIT) == pytest.approx(99.996e-12, rel=1e-5)
    doubled = CIRCUIT.model_copy(update={"R": 2.0e6})
    assert capacitance_from_counts(1109, doubled) == pytest.approx(0.5 * capacitance_from_counts(1109, CIRCUIT))


def test_counter_round_trip_within_quantization():
    C = np.random.default_rng(4).uniform(0.0, 1.0e-9, 500)
    recovered = capacitance_from_counts(counts_from_capacitance(C, CIRCUIT), CIRCUIT)
    assert np.all(np.abs(recovered - C) * CIRCUIT.beta <= 0.5 + 1e-9)


def test_counter_round_trip_over_random_circuits():
    rng = np.random.default_rng(11)
    for _ in range(100):
        circuit = CircuitParams(
            n=int(rng.integers(1, 65)),
            f=float(10 ** rng.uniform(5.0, 7.0)),
            R=float(10 ** rng.uniform(5.0, 7.0)),
            v_ratio_threshold=float(rng.uniform(0.1, 0.9)),
        )
        C = rng.uniform(0.0, 1.0e-9, 100)
        recovered = capacitance_from_counts(counts_from_capacitance(C, circuit), circuit)
        assert np.all(np.abs(recovered - C) * circuit.beta <= 0.5 + 1e-6)


def test_estimate_distance_inverts_coupling():
    cp = CouplingParams(k=2.0e-12, w=0.7)
    c = coupling_capacitance(make_electrode(), np.array([0.0, 0.0, 0.05]), 0.0, cp)
    baseline = 300
    m = baseline + counts_from_capacitance(c, CIRCUIT)
    assert estimate_distance(m, CIRCUIT, cp, baseline) == pytest.approx(0.05, rel=0.01)


def test_estimate_distance_below_baseline():
    with pytest.raises(BelowBaseline):
        estimate_distance(300, CIRCUIT, CouplingParams(k=2.0e-12, w=0.7), 300)


def test_distance_error_grows_with_distance():
    cp = CouplingParams(k=2.0e-12, w=0.7)
    rng = np.random.default_rng(9)

    def mean_error(d: float) -> float:
        ideal = cp.k / d**cp.w * CIRCUIT.beta
        m = np.rint(ideal + rng.normal(0.0, 2.0, 1000))
        return float(np.mean([abs(estimate_distance(x, CIRCUIT, cp, 0.0) - d) for x in m if x > 0]))

    assert mean_error(0.03) < mean_error(0.1) < mean_error(0.3)


def make_pair_model(env: EnvironmentModel) -> SkinSensorModel:
    electrodes = [make_electrode(0, radius=0.012), make_electrode(1, center=(0.03, 0.0, 0.0), radius=0.012)]
    return SkinSensorModel(electrodes, [CIRCUIT, CIRCUIT], CouplingModel(), env)


def test_far_object_reads_baseline():
    model = make_pair_model(EnvironmentModel(drift_rate=0.0, noise_sigma=0.0))
    traj = simulate_trajectory(model, parked_path([0.0, 0.0, 10.0]), seed=1)
    assert np.all(traj.counts == traj.counts[0])
    assert np.allclose(traj.counts[0], model.baseline_counts(), atol=1.0)


def test_descent_increases_signal():
    model = make_pair_model(EnvironmentModel(drift_rate=0.0, noise_sigma=0.0))
    path = ObjectPath(times=np.array([0.0, 4.0]), positions=np.array([[0.0, 0.0, 0.3], [0.0, 0.0, 0.013]]))
    traj = simulate_trajectory(model, path, seed=1)
    assert np.all(np.diff(traj.truth_capacitances[:, 0]) > 0.0)
    assert np.all(np.diff(traj.counts[:, 0]) >= 0)
    assert traj.counts[-1, 0] > traj.counts[0, 0]


def test_neighbor_sees_parasitic_bump():
    env = EnvironmentModel(drift_rate=0.0, noise_sigma=0.0, parasitic_gain=0.05, parasitic_decay=0.05)
    model = make_pair_model(env)
    above_a = np.array([0.0, 0.0, 0.02])
    traj = simulate_trajectory(model, parked_path(above_a), seed=1)
    ct = model.object_coupling(above_a)
    gamma = 0.05 * np.exp(-0.03 / 0.05)
    expected = env.c_env + ct[1] + gamma * ct[0]
    assert traj.truth_capacitances[0, 1] == pytest.approx(expected, rel=1e-12)
    assert traj.truth_capacitances[0, 1] > env.c_env + ct[1]


def test_simulation_is_deterministic(demo_model, demo_skin):
    path = approach_protocol(demo_skin.electrodes, 0.0125, seed=3)
    a = simulate_trajectory(demo_model, path, seed=5)
    b = simulate_trajectory(demo_model, path, seed=5)
    c = simulate_trajectory(demo_model, path, seed=6)
    assert np.array_equal(a.counts, b.counts)
    assert not np.array_equal(a.counts, c.counts)


def test_protocol_touches_every_sensor(demo_skin):
    path = approach_protocol(demo_skin.electrodes, 0.0125, seed=0)
    assert np.all(np.diff(path.times) > 0.0)
    for e in demo_skin.electrodes:
        gaps = np.linalg.norm(path.positions - e.center, axis=1) - 0.0125
        assert gaps.min() == pytest.approx(e.depth, abs=1e-9)


def test_object_path_rejects_unordered_times():
    with pytest.raises(ValueError):
        ObjectPath(times=np.array([0.0, 1.0, 1.0]), positions=np.zeros((3, 3)))


def test_path_from_csv_with_header(tmp_path):
    path = tmp_path / "hover.csv"
    path.write_text("t,x,y,z\n0.0,0.05,0.05,0.20\n1.5,0.05,0.05,0.02\n3.0,0.05,0.05,0.20\n")
    object_path = PathRepository().load(path)
    assert object_path.times.tolist() == [0.0, 1.5, 3.0]
    assert np.allclose(object_path.positions[1], [0.05, 0.05, 0.02])


def test_path_from_csv_without_header(tmp_path):
    path = tmp_path / "hover.csv"
    path.write_text("0,0,0,0.1\n2,0,0,0.3\n")
    assert PathRepository().load(path).duration == pytest.approx(2.0)


def test_path_csv_round_trip(tmp_path):
    original = parked_path([0.01, 0.02, 0.03])
    repo = PathRepository()
    loaded = repo.load(repo.save_csv(original, tmp_path / "parked.csv"))
    assert np.array_equal(loaded.times, original.times)
    assert np.array_equal(loaded.positions, original.positions)


def test_path_from_json_waypoints(tmp_path):
    path = tmp_path / "hover.json"
    path.write_text(
        json.dumps([{"t": 0.0, "x": 0.0, "y": 0.0, "z": 0.2}, {"t": 1.0, "x": 0.0, "y": 0.0, "z": 0.05}])
    )
    object_path = PathRepository().load(path)
    assert object_path.positions.shape == (2, 3)
    assert object_path.positions[1, 2] == pytest.approx(0.05)


def test_path_from_json_object_path(tmp_path):
    path = tmp_path / "parked.json"
    path.write_text(parked_path([0.0, 0.0, 0.1]).model_dump_json())
    assert PathRepository().load(path).duration == pytest.approx(3.0)


def test_path_file_errors(tmp_path):
    repo = PathRepository()
    with pytest.raises(MissingArtifact):
        repo.load(tmp_path / "absent.csv")
    bad = tmp_path / "path.txt"
    bad.write_text("0,0,0,0")
    with pytest.raises(InvalidParameter):
        repo.load(bad)
    narrow = tmp_path / "narrow.csv"
    narrow.write_text("0,0,0\n1,0,0\n")
    with pytest.raises(InvalidParameter):
        repo.load(narrow)


def test_noise_baseline_floor():
    traj = make_trajectory(np.zeros((100, 3)), np.full((100, 2), 500))
    baseline = noise_baseline([traj], window_s=2.0)
    assert np.allclose(baseline.mu_n, 500.0)
    assert np.allclose(baseline.sigma_n, QUANTIZATION_SIGMA)


def test_noise_baseline_uses_both_ends():
    counts = np.full((200, 1), 100)
    counts[-40:] = 110
    counts[60:140] = 900
    traj = make_trajectory(np.zeros((200, 3)), counts)
    baseline = noise_baseline([traj], window_s=2.0)
    assert 100.0 < baseline.mu_n[0] < 110.0


def test_drift_compensator_zeroes_constant_input():
    out = drift_compensator(np.full(10000, 100.0), dt=0.5, initial_baseline=np.zeros(1))
    assert abs(out[0] - 100.0) < 1e-12
    assert abs(out[-1]) < 0.1


def test_drift_compensator_ramp_residual_bounded():
    t = np.arange(0.0, 3000.0, 0.5)
    out = drift_compensator(1.0 * t, dt=0.5, adaptation_timescale=60.0)
    assert np.abs(out).max() <= 60.0 + 1.0
    assert abs(out[-1]) < abs(out).max()


def test_drift_compensator_preserves_short_pulse():
    t = np.arange(0.0, 60.0, 0.05)
    drift = 1000.0 + 0.05 * t
    pulse = 100.0 * np.exp(-0.5 * ((t - 40.0) / 0.25) ** 2)
    out = drift_compensator(drift + pulse, dt=0.05, adaptation_timescale=60.0)
    assert out.max() >= 0.9 * 100.0


def test_drift_compensator_multichannel_shape():
    out = drift_compensator(np.ones((20, 3)), dt=0.1)
    assert out.shape == (20, 3)
    assert np.allclose(out, 0.0)
