"""
Test scenario loading, validation and importance fields.
"""

import json
import math

import numpy as np
import pydantic
import pytest

from conftest import small_scenario, uav
from scenario.defaults import fire_scenario
from scenario.errors import ParseError, ValidationError
from scenario.importance import importance_at, importance_grid
from scenario.loader import load_scenario, parse_scenario, scenario_hash, write_scenario
from scenario.models import ImportanceField


def test_bundled_fire_scenario():
    """Test the bundled scenario loads with the case-study area and roster."""
    scenario = load_scenario("fire.scn")
    assert scenario.area.width == 10_000.0
    assert scenario.area.height == 10_000.0
    assert len(scenario.uavs) == 20
    assert scenario.model_dump() == fire_scenario().model_dump()


def test_default_roster_shape(fire):
    """Test a quarter of the default roster carries backhaul."""
    with_backhaul = [u for u in fire.uavs if u.ground_link_quality > 0]
    assert len(with_backhaul) == 5
    assert all(u.coverage_radius_m == 1_500.0 and u.comm_range_m == 3_000.0 for u in fire.uavs)
    assert all(u.transceivers == 2 for u in fire.uavs)


def test_empty_roster_rejected(fire):
    """Test a scenario without UAVs is a ValidationError naming the field."""
    doc = fire.model_dump(mode="json")
    doc["uavs"] = []
    with pytest.raises(ValidationError) as err:
        parse_scenario(json.dumps(doc))
    assert err.value.field == "uavs"


def test_directive_beyond_horizon_rejected(fire):
    """Test a directive scheduled after max_steps is rejected."""
    doc = fire.model_dump(mode="json")
    doc["max_steps"] = 20
    with pytest.raises(ValidationError) as err:
        parse_scenario(json.dumps(doc))
    assert err.value.field == "directives"


def test_uav_outside_area_rejected():
    """Test start positions must lie inside the area."""
    with pytest.raises(pydantic.ValidationError):
        small_scenario([uav(0, 12_000.0, 500.0)])


def test_malformed_file(tmp_path):
    """Test malformed JSON is a ParseError, not a ValidationError."""
    path = tmp_path / "broken.scn"
    path.write_text("{ not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_scenario(path)
    with pytest.raises(ParseError):
        load_scenario(tmp_path / "missing.scn")


def test_write_then_load_is_identical(tmp_path, fire):
    """Test a written scenario loads back equal and hashes the same."""
    path = write_scenario(fire, tmp_path / "copy.scn")
    loaded = load_scenario(path)
    assert loaded.model_dump() == fire.model_dump()
    assert scenario_hash(loaded) == scenario_hash(fire)


def test_importance_at_values():
    """Test the Gaussian field at its center and at one sigma."""
    field = ImportanceField(center=(0.0, 0.0), sigma_m=1_000.0, peak=1.0)
    assert importance_at([field], (0.0, 0.0)) == pytest.approx(1.0)
    assert importance_at([field], (1_000.0, 0.0)) == pytest.approx(math.exp(-0.5))
    assert importance_at([field], (400.0, 0.0)) > importance_at([field], (800.0, 0.0))
    assert importance_at([], (5.0, 5.0)) == 0.0


def test_importance_combines_by_max():
    """Test overlapping fields take the maximum and ignore list order."""
    a = ImportanceField(center=(0.0, 0.0), sigma_m=1_000.0, peak=0.5)
    b = ImportanceField(center=(500.0, 0.0), sigma_m=1_000.0, peak=1.0)
    p = (100.0, 0.0)
    assert importance_at([a, b], p) == importance_at([b, a], p)
    assert importance_at([a, b], p) == pytest.approx(max(importance_at([a], p), importance_at([b], p)))


def test_importance_grid_shape_and_peak(fire):
    """Test the 250 m grid over 10 km and the location of its maximum."""
    grid = importance_grid(fire)
    assert grid.shape == (40, 40)
    row, col = np.unravel_index(np.argmax(grid), grid.shape)
    center = fire.fields[0].center
    assert col * 250.0 <= center[0] <= (col + 1) * 250.0
    assert row * 250.0 <= center[1] <= (row + 1) * 250.0
    assert grid.sum() > 0


def test_importance_grid_without_fields(fire):
    """Test an empty field set gives an all-zero grid."""
    assert not importance_grid(fire, fields=[]).any()


def test_partial_cells_dropped():
    """Test cells that do not fit the area are dropped."""
    scenario = small_scenario([uav(0, 100.0, 100.0)], cell_size_m=300.0)
    assert importance_grid(scenario).shape == (33, 33)


def test_short_fire_horizon_keeps_earlier_directives(tmp_path):
    """Test a shortened fire scenario drops only the directives past its horizon and still runs."""
    from cli.main import main

    scenario = fire_scenario(max_steps=40)
    assert [d.step for d in scenario.directives] == [10, 25, 40]
    assert fire_scenario(max_steps=12, directives=[]).directives == []

    path = str(write_scenario(fire_scenario(max_steps=12), tmp_path / "fire.scn"))
    assert main(["validate", path]) == 0
    assert main(["run", path, "--algo", "log-linear", "--out", str(tmp_path / "run")]) == 0
    events = (tmp_path / "run" / "events.csv").read_text()
    assert "field_added" in events
