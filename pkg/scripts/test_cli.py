"""
Test the sim command line: exit codes, artifacts and plots.
"""

import json

import pandas as pd
import pytest

from cli.main import main
from cli.overrides import OverrideError, apply_scenario_overrides, split_overrides
from conftest import small_scenario, uav
from engine.export import MANIFEST, read_manifest
from scenario.loader import write_scenario


@pytest.fixture
def scenario_file(tmp_path):
    """A three-UAV scenario written to disk."""
    scenario = small_scenario([
        uav(0, 3_000.0, 4_000.0, ground_link_quality=0.9, relay_quota=1),
        uav(1, 4_500.0, 5_000.0),
        uav(2, 6_500.0, 6_000.0, ground_link_quality=0.4),
    ], max_steps=4)
    return str(write_scenario(scenario, tmp_path / "three.scn"))


def test_validate_bundled(capsys):
    assert main(["validate"]) == 0
    out = capsys.readouterr().out
    assert "valid" in out
    assert "20 UAVs" in out
    assert "grid 40x40" in out


@pytest.mark.parametrize("argv", [
    ["run", "--algo", "simulated-annealing", "--out", "x"],
    ["compare", "--algos", "best-response,nope", "--out", "x"],
    ["validate", "--set", "no-equals-sign"],
    ["validate", "--set", "learner.alpha=5"],
    ["validate", "--set", "learner.unknown=1"],
    ["sweep", "--seeds", "0", "--out", "x"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


@pytest.mark.parametrize("argv", [
    ["validate", "missing-file.scn"],
    ["validate", "--set", "max_steps=-1"],
    ["validate", "--set", "uavs=[]"],
])
def test_scenario_errors_exit_1(argv):
    assert main(argv) == 1


def test_overrides_reach_the_scenario(capsys):
    assert main(["validate", "--set", "cell_size_m=500", "--set", "uavs.0.relay_quota=2"]) == 0
    assert "grid 20x20" in capsys.readouterr().out


def test_override_parsing():
    learner, scenario = split_overrides(["learner.alpha=0.5", "weights.w_ovh=0", "seed=3"])
    assert learner == {"alpha": 0.5}
    doc = apply_scenario_overrides({"weights": {"w_cov": 1.0}, "uavs": [{"id": 0}]}, scenario)
    assert doc == {"weights": {"w_cov": 1.0, "w_ovh": 0}, "uavs": [{"id": 0}], "seed": 3}
    with pytest.raises(OverrideError):
        apply_scenario_overrides({"uavs": []}, split_overrides(["uavs.3.id=1"])[1])


def test_run_and_plot(tmp_path, scenario_file):
    """Test a run exports its trace and every figure renders from it."""
    out = tmp_path / "run"
    assert main(["run", scenario_file, "--seed", "5", "--out", str(out)]) == 0
    for name in ("metrics.csv", "events.csv", "final_state.json", MANIFEST):
        assert (out / name).is_file()
    assert read_manifest(out / MANIFEST)["seed"] == "5"

    objective_svg = tmp_path / "objective.svg"
    assert main(["plot", str(out), "--kind", "objective", "--out", str(objective_svg)]) == 0
    assert "<svg" in objective_svg.read_text()

    layout_svg = tmp_path / "layout.svg"
    assert main(["plot", str(out / "final_state.json"), "--kind", "layout", "--out", str(layout_svg)]) == 0
    final = json.loads((out / "final_state.json").read_text())
    assert layout_svg.read_text().count('id="hull-') == len(final["coalitions"])


def test_rerun_needs_force(tmp_path, scenario_file):
    out = str(tmp_path / "run")
    assert main(["run", scenario_file, "--out", out]) == 0
    assert main(["run", scenario_file, "--out", out]) == 1
    assert main(["run", scenario_file, "--out", out, "--force"]) == 0


def test_plot_is_byte_identical(tmp_path, scenario_file):
    out = tmp_path / "run"
    assert main(["run", scenario_file, "--out", str(out)]) == 0
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["plot", str(out), "--kind", "layout", "--out", str(first)]) == 0
    assert main(["plot", str(out), "--kind", "layout", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_plot_of_empty_metrics(tmp_path):
    """Test an empty table renders a labelled placeholder instead of failing."""
    metrics = tmp_path / "metrics.csv"
    metrics.write_text("step,coverage,overhead,objective\r\n", encoding="utf-8")
    svg = tmp_path / "empty.svg"
    assert main(["plot", str(metrics), "--kind", "objective", "--out", str(svg)]) == 0
    assert "no data" in svg.read_text()


@pytest.mark.parametrize("content", ["step,coverage\r\n1,0.5\r\n", "a,b\r\n\"unterminated\r\n"])
def test_plot_of_malformed_table(tmp_path, content):
    bad = tmp_path / "metrics.csv"
    bad.write_text(content, encoding="utf-8")
    assert main(["plot", str(bad), "--kind", "objective", "--out", str(tmp_path / "x.svg")]) == 1


def test_plot_of_missing_input(tmp_path):
    assert main(["plot", str(tmp_path / "nothing"), "--kind", "layout", "--out", str(tmp_path / "x.svg")]) == 1


def test_compare_writes_tables(tmp_path, scenario_file):
    """Test compare exports rows, summary, histories and the convergence figure."""
    out = tmp_path / "cmp"
    assert main(["compare", scenario_file, "--algos", "best-response,q-learning", "--seeds", "2",
                 "--out", str(out)]) == 0
    rows = pd.read_csv(out / "comparison.csv")
    assert len(rows) == 4
    assert sorted(rows["algo"].unique()) == ["best-response", "q-learning"]
    summary = pd.read_csv(out / "comparison_summary.csv")
    assert list(summary["n_seeds"]) == [2, 2]
    svg = (out / "convergence.svg").read_text()
    assert 'id="curve-best-response"' in svg
    assert 'id="curve-q-learning"' in svg
    manifest = read_manifest(out / MANIFEST)
    assert manifest["algos"] == "best-response,q-learning"

    figure = tmp_path / "again.svg"
    assert main(["plot", str(out), "--kind", "convergence", "--out", str(figure)]) == 0


def test_sweep_and_baseline(tmp_path, scenario_file):
    assert main(["sweep", scenario_file, "--algo", "log-linear", "--seeds", "2", "--out", str(tmp_path / "s")]) == 0
    assert len(pd.read_csv(tmp_path / "s" / "comparison.csv")) == 2

    assert main(["baseline", scenario_file, "--out", str(tmp_path / "b")]) == 0
    table = pd.read_csv(tmp_path / "b" / "baselines.csv")
    assert list(table["mode"]) == ["game", "coverage-only", "overhead-only"]
