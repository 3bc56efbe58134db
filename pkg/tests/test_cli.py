"""Command line behavior: exit codes, config merging, output determinism."""

import json

import pytest

from spatialoutliers.cli import main


@pytest.fixture
def generated(tmp_path):
    data_dir = tmp_path / "data"
    code = main(["gen", "--rows", "4", "--cols", "4", "--smoothing", "2",
                 "--plant", "5:6", "--seed", "3", "--out", str(data_dir)])
    assert code == 0
    return data_dir / "dataset.geojson", data_dir / "network.csv"


def test_gen_writes_both_files(generated, capsys):
    dataset_path, network_path = generated
    assert dataset_path.exists()
    assert network_path.exists()


def test_detect_happy_path(generated, tmp_path, capsys):
    dataset_path, network_path = generated
    out = tmp_path / "out"
    code = main(["detect", "--dataset", str(dataset_path), "--network", str(network_path),
                 "--attribute", "value", "--model", "weighted", "--strategy", "graph",
                 "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "weighted: scored 16, excluded 0, outliers: 5" in captured.out
    assert (out / "weighted_report.json").exists()
    assert (out / "weighted_scatter.json").exists()


def test_detect_multiple_models_writes_comparisons(generated, tmp_path, capsys):
    dataset_path, network_path = generated
    out = tmp_path / "out"
    code = main(["detect", "--dataset", str(dataset_path), "--network", str(network_path),
                 "--attribute", "value", "--model", "one_dimensional", "--model", "weighted",
                 "--strategy", "graph", "--out", str(out)])
    assert code == 0
    assert (out / "comparison_one_dimensional_vs_weighted.json").exists()
    doc = json.loads((out / "comparison_one_dimensional_vs_weighted.json").read_text())
    assert doc["baseline_model"] == "one_dimensional"
    assert doc["candidate_model"] == "weighted"


def test_compare_requires_two_models(generated, capsys):
    dataset_path, _ = generated
    code = main(["compare", "--dataset", str(dataset_path), "--attribute", "value",
                 "--model", "one_dimensional"])
    captured = capsys.readouterr()
    assert code == 2
    assert "two models" in captured.err


def test_unknown_model_exits_2(generated, capsys):
    dataset_path, _ = generated
    code = main(["detect", "--dataset", str(dataset_path), "--attribute", "value",
                 "--model", "psychic"])
    captured = capsys.readouterr()
    assert code == 2
    assert "config error" in captured.err


def test_bad_coefficients_exit_2(generated, capsys):
    dataset_path, network_path = generated
    code = main(["detect", "--dataset", str(dataset_path), "--network", str(network_path),
                 "--attribute", "value", "--strategy", "hybrid",
                 "--alpha", "0.5", "--beta", "0.2", "--delta", "0.2", "--radius", "1.5"])
    captured = capsys.readouterr()
    assert code == 2
    assert "config error" in captured.err


def test_missing_dataset_file_exits_3(capsys):
    code = main(["detect", "--dataset", "no/such/file.geojson", "--attribute", "value",
                 "--model", "one_dimensional"])
    captured = capsys.readouterr()
    assert code == 3
    assert "data error" in captured.err


def test_missing_attribute_exits_3(generated, capsys):
    dataset_path, _ = generated
    code = main(["detect", "--dataset", str(dataset_path), "--attribute", "nope",
                 "--model", "one_dimensional"])
    assert code == 3


def test_missing_required_options_exit_2(capsys):
    assert main(["detect", "--attribute", "value"]) == 2
    assert main(["detect", "--dataset", "x.geojson"]) == 2


def test_degenerate_exit_codes(tmp_path, capsys):
    dataset_path = tmp_path / "flat.geojson"
    features = [
        {"type": "Feature", "id": str(i),
         "geometry": {"type": "Point", "coordinates": [float(i), 0.0]},
         "properties": {"value": 3.25}}
        for i in range(5)
    ]
    dataset_path.write_text(json.dumps({"type": "FeatureCollection", "features": features}))
    base = ["detect", "--dataset", str(dataset_path), "--attribute", "value",
            "--model", "one_dimensional", "--out", str(tmp_path / "out")]
    assert main(base) == 0
    captured = capsys.readouterr()
    assert "warning:" in captured.err
    assert main(base + ["--fail-degenerate"]) == 4
    captured = capsys.readouterr()
    assert "degenerate statistics" in captured.err


def test_config_file_supplies_options(generated, tmp_path, capsys):
    dataset_path, network_path = generated
    out = tmp_path / "cfg_out"
    config = tmp_path / "run.cfg"
    config.write_text(
        f"dataset = {dataset_path}\n"
        f"network = {network_path}\n"
        "attribute = value\n"
        "model = weighted, one_dimensional\n"
        "strategy = graph\n"
        "# a comment line\n"
        f"out = {out}\n"
    )
    code = main(["detect", "--config", str(config)])
    assert code == 0
    assert (out / "weighted_report.json").exists()
    assert (out / "one_dimensional_report.json").exists()


def test_cli_flag_overrides_config(generated, tmp_path):
    dataset_path, _ = generated
    config = tmp_path / "run.cfg"
    config.write_text(
        f"dataset = {dataset_path}\n"
        "attribute = value\n"
        "model = one_dimensional\n"
        "theta = 2.0\n"
        f"out = {tmp_path / 'a'}\n"
    )
    assert main(["detect", "--config", str(config)]) == 0
    report_a = json.loads((tmp_path / "a" / "one_dimensional_report.json").read_text())
    assert report_a["theta"] == 2.0

    assert main(["detect", "--config", str(config), "--theta", "3.5",
                 "--out", str(tmp_path / "b")]) == 0
    report_b = json.loads((tmp_path / "b" / "one_dimensional_report.json").read_text())
    assert report_b["theta"] == 3.5


def test_config_file_with_unknown_key_exits_2(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("dataset = x\natribute = y\n")
    assert main(["detect", "--config", str(config)]) == 2


def test_gen_invalid_plant_exits_2(tmp_path, capsys):
    assert main(["gen", "--plant", "not-a-plant", "--out", str(tmp_path)]) == 2
    captured = capsys.readouterr()
    assert "INDEX:SIGMAS" in captured.err


def test_gen_out_of_range_plant_exits_2(tmp_path):
    assert main(["gen", "--rows", "3", "--cols", "3", "--plant", "99:5",
                 "--out", str(tmp_path)]) == 2


def test_report_summarizes(generated, tmp_path, capsys):
    dataset_path, network_path = generated
    out = tmp_path / "out"
    main(["detect", "--dataset", str(dataset_path), "--network", str(network_path),
          "--attribute", "value", "--model", "weighted", "--strategy", "graph",
          "--out", str(out)])
    capsys.readouterr()
    code = main(["report", str(out / "weighted_report.json"), "--top", "2"])
    captured = capsys.readouterr()
    assert code == 0
    assert "model: weighted" in captured.out
    assert "outliers (1): 5" in captured.out
    assert "top 2 by |z|" in captured.out


def test_report_on_non_report_exits_3(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text('{"hello": 1}')
    assert main(["report", str(path)]) == 3


def test_detect_runs_are_byte_identical(generated, tmp_path):
    dataset_path, network_path = generated
    args = ["detect", "--dataset", str(dataset_path), "--network", str(network_path),
            "--attribute", "value", "--model", "weighted", "--model", "classical",
            "--strategy", "graph"]
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b)]) == 0
    files_a = sorted(p.name for p in out_a.iterdir())
    assert files_a == sorted(p.name for p in out_b.iterdir())
    for name in files_a:
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
