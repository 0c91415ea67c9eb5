import numpy as np
import pytest
from scipy.spatial.distance import pdist

from proxiskin.commons.errors import DepthExceedsThickness, InvalidParameter
from proxiskin.commons.geometry import apply_transform, axis_rotation, translation
from proxiskin.stages.mesh_core.services import flat_patch, mold_dermis
from proxiskin.stages.sensor_layout.services import (
    place_nodules,
    poisson_disk_sample,
    snap_to_surface,
    wire_resistance,
)
from tests.conftest import make_electrode


@pytest.fixture(scope="module")
def dermis():
    return mold_dermis(flat_patch(0.1, 20), 0.005)


def test_poisson_respects_min_distance(dermis):
    sample = poisson_disk_sample(dermis.outer_mesh, 0.015, seed=3)
    assert len(sample) > 1
    assert pdist(sample.points).min() >= 0.015


def test_poisson_is_deterministic(dermis):
    a = poisson_disk_sample(dermis.outer_mesh, 0.02, seed=11)
    b = poisson_disk_sample(dermis.outer_mesh, 0.02, seed=11)
    assert np.array_equal(a.points, b.points)
    assert np.array_equal(a.face_ids, b.face_ids)


def test_poisson_huge_radius_gives_single_point(dermis):
    sample = poisson_disk_sample(dermis.outer_mesh, 10.0 * dermis.outer_mesh.bounding_diagonal(), seed=0)
    assert len(sample) <= 1


def test_poisson_count_on_flat_patch(dermis):
    counts = []
    for seed in range(100):
        sample = poisson_disk_sample(dermis.outer_mesh, 0.02, seed=seed)
        assert pdist(sample.points).min() >= 0.02
        counts.append(len(sample))
    assert min(counts) >= 12
    assert 12 <= np.mean(counts) <= 25


def test_poisson_points_lie_on_surface(dermis):
    sample = poisson_disk_sample(dermis.outer_mesh, 0.02, seed=5)
    assert np.allclose(sample.points[:, 2], 0.005)


def test_poisson_rejects_bad_radius(dermis):
    with pytest.raises(InvalidParameter):
        poisson_disk_sample(dermis.outer_mesh, 0.0, seed=0)


def test_snap_projects_onto_outer_surface(dermis):
    sites = snap_to_surface(np.array([[0.02, 0.03, 0.0], [0.07, 0.04, 0.01]]), dermis.outer_mesh)
    assert np.allclose(sites.points[:, 2], 0.005)
    assert np.allclose(sites.points[:, :2], [[0.02, 0.03], [0.07, 0.04]])


def test_nodule_radius_from_nearest_neighbor(dermis):
    sites = snap_to_surface(np.array([[0.03, 0.05, 0.005], [0.07, 0.05, 0.005]]), dermis.outer_mesh)
    electrodes = place_nodules(sites, dermis, radius_scale=0.4, depth=0.001, min_radius=0.005, max_radius=0.02)
    assert [e.radius for e in electrodes] == pytest.approx([0.016, 0.016])
    assert electrodes[0].area == pytest.approx(np.pi * 0.016**2)


def test_single_nodule_gets_max_radius(dermis):
    sites = snap_to_surface(np.array([[0.05, 0.05, 0.005]]), dermis.outer_mesh)
    (electrode,) = place_nodules(sites, dermis, max_radius=0.012)
    assert electrode.radius == 0.012


def test_half_scale_grid_is_tangent(dermis):
    grid = np.array([[x, y, 0.005] for x in (0.03, 0.05, 0.07) for y in (0.03, 0.05, 0.07)])
    sites = snap_to_surface(grid, dermis.outer_mesh)
    electrodes = place_nodules(sites, dermis, radius_scale=0.5, min_radius=0.001, max_radius=0.05)
    radii = np.array([e.radius for e in electrodes])
    assert np.allclose(radii, 0.01)
    centers = np.vstack([e.center for e in electrodes])
    gaps = pdist(centers) - (radii[:, None] + radii[None, :])[np.triu_indices(len(radii), 1)]
    assert gaps.min() == pytest.approx(0.0, abs=1e-12)


def test_nodules_sit_below_outer_surface(dermis):
    sites = snap_to_surface(np.array([[0.05, 0.05, 0.005]]), dermis.outer_mesh)
    (electrode,) = place_nodules(sites, dermis, depth=0.0015)
    assert electrode.center[2] == pytest.approx(0.005 - 0.0015)
    assert np.allclose(electrode.normal, [0.0, 0.0, 1.0])


def test_radius_clamping(dermis):
    sample = poisson_disk_sample(dermis.outer_mesh, 0.012, seed=2)
    electrodes = place_nodules(sample, dermis, radius_scale=0.45, min_radius=0.004, max_radius=0.006)
    assert all(0.004 <= e.radius <= 0.006 for e in electrodes)


def test_depth_must_fit_in_dermis(dermis):
    sites = snap_to_surface(np.array([[0.05, 0.05, 0.005]]), dermis.outer_mesh)
    with pytest.raises(DepthExceedsThickness):
        place_nodules(sites, dermis, depth=0.005)


def test_electrode_pose_round_trip():
    electrode = make_electrode(center=(0.01, 0.02, 0.005), normal=(0.0, 0.6, 0.8))
    link = axis_rotation([0.0, 0.0, 1.0], 0.7) @ translation([0.3, -0.1, 0.5])
    world = electrode.world_pose(link)
    assert np.allclose(world[:3, 3], apply_transform(link, electrode.center), atol=1e-12)
    assert np.allclose(electrode.to_link(link, world[:3, 3]), 0.0, atol=1e-9)
    back = apply_transform(np.linalg.inv(link), world[:3, 3])
    assert np.allclose(back, electrode.center, atol=1e-9)


def test_wire_resistance():
    electrode = make_electrode()
    assert wire_resistance(electrode, 0.0, 40000.0, 1.0e6) == 1.0e6
    assert wire_resistance(electrode, 0.30, 40000.0, 1.0e6) == pytest.approx(1.012e6)
    short = wire_resistance(electrode, 0.1, 40000.0, 0.0)
    assert wire_resistance(electrode, 0.2, 40000.0, 0.0) == pytest.approx(2.0 * short)


def test_wire_resistance_rejects_negative_length():
    with pytest.raises(InvalidParameter):
        wire_resistance(make_electrode(), -0.1)
