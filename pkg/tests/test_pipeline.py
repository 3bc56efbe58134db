"""End-to-end pipeline runs: config validation, analysis, file emission."""

import json

import pytest

from spatialoutliers.datagen import GenSpec, generate
from spatialoutliers.errors import ConfigError, DegenerateStatisticsError
from spatialoutliers.fileio import load_dataset, load_network, write_dataset, write_network
from spatialoutliers.neighborhood import Dataset
from spatialoutliers.pipeline import RunConfig, analyze, run, run_generate

from helpers import values_dataset


@pytest.fixture
def grid_files(tmp_path):
    data = generate(GenSpec(kind="grid", rows=4, cols=4, smoothing=2, planted=((5, 6.0),), seed=3))
    dataset_path = tmp_path / "dataset.geojson"
    network_path = tmp_path / "network.csv"
    write_dataset(data.dataset, dataset_path)
    write_network(data.network, network_path)
    return dataset_path, network_path


def test_config_rejects_unknown_model():
    cfg = RunConfig(dataset="d", attribute="a", models=("weighted", "speedy"))
    with pytest.raises(ConfigError, match="speedy"):
        cfg.validated()


def test_config_rejects_duplicate_models():
    cfg = RunConfig(dataset="d", attribute="a", models=("weighted", "weighted"))
    with pytest.raises(ConfigError, match="once"):
        cfg.validated()


def test_config_rejects_bad_format():
    cfg = RunConfig(dataset="d", attribute="a", format="xml")
    with pytest.raises(ConfigError, match="xml"):
        cfg.validated()


def test_config_requires_dataset_and_attribute():
    with pytest.raises(ConfigError):
        RunConfig(dataset="", attribute="a").validated()
    with pytest.raises(ConfigError):
        RunConfig(dataset="d", attribute="").validated()


def test_config_weight_rules_checked_only_for_spatial_models():
    cfg = RunConfig(dataset="d", attribute="a", models=("one_dimensional",),
                    strategy="distance", radius=None)
    cfg.validated()
    spatial = RunConfig(dataset="d", attribute="a", models=("weighted",),
                        strategy="distance", radius=None)
    with pytest.raises(ConfigError):
        spatial.validated()


def test_analyze_orders_reports_and_pairs():
    data = generate(GenSpec(kind="grid", rows=3, cols=3, smoothing=1, seed=7))
    cfg = RunConfig(dataset="mem", attribute="value",
                    models=("one_dimensional", "weighted", "classical"), strategy="graph")
    result = analyze(cfg, data.dataset, data.network)
    assert list(result.reports) == ["one_dimensional", "weighted", "classical"]
    pairs = [(c.baseline_model, c.candidate_model) for c in result.comparisons]
    assert pairs == [
        ("one_dimensional", "weighted"),
        ("one_dimensional", "classical"),
        ("weighted", "classical"),
    ]


def test_analyze_collects_degenerate_warning_without_failing():
    dataset = values_dataset({"a": 2.0, "b": 2.0, "c": 2.0})
    cfg = RunConfig(dataset="mem", attribute="value", models=("one_dimensional",))
    result = analyze(cfg, dataset)
    assert len(result.warnings) == 1
    assert result.warnings[0].startswith("one_dimensional:")
    assert result.reports["one_dimensional"].degenerate


def test_analyze_fail_degenerate_raises():
    dataset = values_dataset({"a": 2.0, "b": 2.0, "c": 2.0})
    cfg = RunConfig(dataset="mem", attribute="value", models=("one_dimensional",),
                    fail_degenerate=True)
    with pytest.raises(DegenerateStatisticsError, match="one_dimensional"):
        analyze(cfg, dataset)


def test_analyze_healthy_data_has_no_warnings():
    data = generate(GenSpec(kind="grid", rows=3, cols=3, seed=1))
    cfg = RunConfig(dataset="mem", attribute="value", models=("weighted",), strategy="graph")
    assert analyze(cfg, data.dataset, data.network).warnings == []


def test_run_writes_expected_files(grid_files, tmp_path):
    dataset_path, network_path = grid_files
    out = tmp_path / "out"
    cfg = RunConfig(dataset=str(dataset_path), attribute="value", network=str(network_path),
                    models=("weighted", "one_dimensional"), strategy="graph", out=str(out))
    result = run(cfg)
    names = [p.name for p in result.files]
    assert names == [
        "weighted_report.json",
        "weighted_scatter.json",
        "one_dimensional_report.json",
        "one_dimensional_scatter.json",
        "comparison_weighted_vs_one_dimensional.json",
    ]
    for path in result.files:
        assert path.exists()
    report = json.loads((out / "weighted_report.json").read_text())
    assert report["model"] == "weighted"
    assert report["outliers"] == ["5"]


def test_run_csv_format(grid_files, tmp_path):
    dataset_path, network_path = grid_files
    out = tmp_path / "csvout"
    cfg = RunConfig(dataset=str(dataset_path), attribute="value", network=str(network_path),
                    models=("weighted",), strategy="graph", out=str(out), format="csv")
    result = run(cfg)
    assert [p.suffix for p in result.files] == [".csv", ".csv"]
    lines = (out / "weighted_report.csv").read_text().splitlines()
    assert lines[0] == "# model=weighted"
    header_at = next(i for i, line in enumerate(lines) if not line.startswith("#"))
    assert lines[header_at] == "id,value,expected,deviation,z,is_outlier"


def test_run_single_model_emits_no_comparison(grid_files, tmp_path):
    dataset_path, _ = grid_files
    cfg = RunConfig(dataset=str(dataset_path), attribute="value",
                    models=("one_dimensional",), out=str(tmp_path / "solo"))
    result = run(cfg)
    assert result.comparisons == []
    assert len(result.files) == 2


def test_run_generate_round_trip(tmp_path):
    spec = GenSpec(kind="grid", rows=3, cols=4, smoothing=1, planted=((2, 4.0),), seed=11)
    dataset_path, network_path, planted = run_generate(spec, str(tmp_path))
    assert planted == ("2",)
    dataset = load_dataset(dataset_path)
    network = load_network(network_path)
    regenerated = generate(spec)
    assert dataset == regenerated.dataset
    assert network == regenerated.network


def test_analyze_spatial_model_without_network_uses_geometry():
    data = generate(GenSpec(kind="grid", rows=3, cols=3, seed=2))
    cfg = RunConfig(dataset="mem", attribute="value", models=("weighted",),
                    strategy="adjacency")
    result = analyze(cfg, data.dataset, None)
    assert len(result.reports["weighted"].scores) == 9


def test_dataset_equality_guard():
    a = values_dataset({"x": 1.0, "y": 2.0})
    b = values_dataset({"x": 1.0, "y": 2.0})
    assert a == b
    assert isinstance(a, Dataset)
