import json

import pytest
from pydantic import ValidationError

from proxiskin.commons.errors import ConfigError, MissingArtifact
from proxiskin.commons.schemas import BaseSchema
from proxiskin.configs.pipeline import STAGES, PipelineConfig, SeedConfig, load_pipeline_config
from proxiskin.stages.avoid_sim.schema import ScenarioSummary
from proxiskin.stages.cap_physics.schema import RecordingMeta
from proxiskin.stages.characterize.schema import (
    AreaRangeReport,
    AreaRangeRow,
    CharacterizationReport,
    PowerLawFit,
    SensorCharacterization,
)
from proxiskin.stages.generation.schema import GenerationReport, SensorSummary
from proxiskin.stages.pss_map.schema import Calibration, DistanceBin, PssMetrics
from tests.conftest import DEMO_CONFIG


def test_demo_config_loads():
    config = load_pipeline_config(DEMO_CONFIG)
    assert config.schema_version == 1
    assert config.design.layout.value == "explicit"
    assert len(config.design.explicit_points) == 5
    assert config.seeds.master == 7


def test_stage_seeds_are_deterministic_and_distinct():
    seeds = SeedConfig(master=7)
    resolved = seeds.resolved()
    assert resolved == SeedConfig(master=7).resolved()
    assert len(set(resolved.values())) == len(STAGES)
    assert resolved != SeedConfig(master=8).resolved()


def test_explicit_stage_seed_wins():
    seeds = SeedConfig(master=7, train=123)
    assert seeds.for_stage("train") == 123
    assert seeds.for_stage("map") == SeedConfig(master=7).for_stage("map")


def test_derived_sub_seeds():
    seeds = SeedConfig(master=1)
    assert seeds.derive("simulate", 0, 0) == seeds.derive("simulate", 0, 0)
    assert seeds.derive("simulate", 0, 0) != seeds.derive("simulate", 0, 1)
    assert seeds.derive("simulate", 0, 0) != seeds.derive("simulate", 1, 0)


def test_master_seed_override():
    config = PipelineConfig(seeds=SeedConfig(master=1, train=5))
    assert config.with_master_seed(None) is config
    overridden = config.with_master_seed(9)
    assert overridden.seeds.master == 9
    assert overridden.seeds.train is None
    assert load_pipeline_config(DEMO_CONFIG, seed=9).seeds.master == 9


def test_missing_config(tmp_path):
    with pytest.raises(MissingArtifact):
        load_pipeline_config(tmp_path / "absent.json")


def test_config_needs_schema_version(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"name": "x"}))
    with pytest.raises(ConfigError):
        load_pipeline_config(path)


def test_schema_version_must_be_a_top_level_key(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"name": "schema_version", "design": {"note": "schema_version"}}))
    with pytest.raises(ConfigError) as info:
        load_pipeline_config(path)
    assert "top-level" in info.value.message


def test_config_must_be_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text('{"schema_version": 1,')
    with pytest.raises(ConfigError):
        load_pipeline_config(path)


def test_unknown_field_is_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"schema_version": 1, "design": {"thicknes": 0.005}}))
    with pytest.raises(ValidationError) as info:
        load_pipeline_config(path)
    assert info.value.errors()[0]["loc"] == ("design", "thicknes")


def test_out_of_range_value_is_rejected(tmp_path):
    raw = json.loads(DEMO_CONFIG.read_text())
    raw["design"]["a_mix"] = 2.0
    path = tmp_path / "config.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(ValidationError):
        load_pipeline_config(path)


def test_wrong_schema_version(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"schema_version": 2}))
    with pytest.raises(ValidationError):
        load_pipeline_config(path)


@pytest.mark.parametrize(
    "record",
    [
        SensorSummary,
        GenerationReport,
        RecordingMeta,
        PowerLawFit,
        SensorCharacterization,
        CharacterizationReport,
        AreaRangeRow,
        AreaRangeReport,
        Calibration,
        DistanceBin,
        PssMetrics,
        ScenarioSummary,
    ],
)
def test_stage_records_are_frozen_and_strict(record):
    assert issubclass(record, BaseSchema)
    assert record.model_config["frozen"] is True
    assert record.model_config["extra"] == "forbid"


def test_report_fields_cannot_be_reassigned():
    fit = PowerLawFit(sensor_id=0, k=1e-12, w=0.7, pearson_r=-0.99, n_samples=20, w_in_band=True)
    with pytest.raises(ValidationError):
        fit.w = 0.2
    with pytest.raises(ValidationError):
        PowerLawFit(sensor_id=0, k=1e-12, w=0.7, pearson_r=-0.99, n_samples=20, w_in_band=True, note="x")
