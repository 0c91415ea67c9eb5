import json
import sys
from pathlib import Path

import numpy as np
import pytest
from loguru import logger
from scipy.spatial import cKDTree
from typer.testing import CliRunner

from proxiskin.commons.repository import SIDECAR_SUFFIX
from proxiskin.main import app
from proxiskin.stages.avoid_sim.repository import ScenarioRepository
from proxiskin.stages.characterize.repository import CharacterizationRepository
from proxiskin.stages.generation.repository import SkinRepository
from proxiskin.stages.pss_map.repository import MapRepository
from tests.conftest import DEMO_CONFIG

pytestmark = pytest.mark.slow

runner = CliRunner()


def run_demo(out: Path) -> None:
    result = runner.invoke(app, ["pipeline", "--config", str(DEMO_CONFIG), "--out", str(out), "-q"])
    logger.configure(handlers=[{"sink": sys.stderr, "level": "WARNING"}])
    assert result.exit_code == 0, result.output


def snapshot(out: Path) -> dict[str, bytes]:
    """Every file under ``out``, sidecars without their creation time."""
    files = {}
    for path in sorted(p for p in out.rglob("*") if p.is_file()):
        content = path.read_bytes()
        if path.name.endswith(SIDECAR_SUFFIX):
            sidecar = json.loads(content)
            sidecar.pop("created_at")
            content = json.dumps(sidecar, sort_keys=True).encode()
        files[str(path.relative_to(out))] = content
    return files


@pytest.fixture(scope="module")
def demo_run(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("demo")
    run_demo(out)
    return out


def test_detection_ranges_span_the_demo_skin(demo_run):
    ranges = [r for r in CharacterizationRepository(demo_run / "characterization").load().detection_ranges if r]
    assert len(ranges) >= 3
    assert all(0.01 <= r <= 0.30 for r in ranges)
    assert max(ranges) / min(ranges) >= 5.0


def test_calibrated_uncertainty_tracks_test_error(demo_run):
    metrics = MapRepository(demo_run / "map").load_metrics()
    assert metrics.pearson_error_sigma >= 0.5


def test_error_jumps_beyond_detection_range(demo_run):
    metrics = MapRepository(demo_run / "map").load_metrics()
    assert metrics.out_of_range_ratio is not None
    assert metrics.out_of_range_ratio >= 2.0
    assert metrics.median_error_out_of_range_m >= 2.0 * metrics.median_error_in_range_m


def test_pss_is_sharpest_near_the_skin(demo_run):
    grid = MapRepository(demo_run / "map").load_grid()
    centers = np.array([e.center for e in SkinRepository(demo_run / "skin").load_electrodes()])
    nearest, _ = cKDTree(centers).query(grid.positions)
    near = grid.mean_sigma[nearest <= 0.05]
    far = grid.mean_sigma[(nearest >= 0.20) & (nearest <= 0.30)]
    assert near.size and far.size
    assert near.mean() < far.mean()


def test_avoidance_outperforms_blind_run(demo_run):
    scenarios = ScenarioRepository(demo_run / "avoid")
    guarded = scenarios.load_summary()
    blind = scenarios.load_summary("ablation_")
    assert guarded.fitted_sensors > 0
    assert guarded.min_clearance_m > blind.min_clearance_m
    assert guarded.min_speed_during_intrusion < 0.8 * guarded.cruise_speed
    assert guarded.post_removal_deviation_m < 0.005
    assert (demo_run / "avoid" / "ring" / "report.json").is_file()


def test_rerun_reproduces_every_artifact(demo_run):
    first = snapshot(demo_run)
    run_demo(demo_run)
    second = snapshot(demo_run)
    assert sorted(first) == sorted(second)
    changed = [name for name in first if first[name] != second[name]]
    assert changed == []
