#!/usr/bin/env python3
"""
Tests for cli.py: subcommands, output formats and exit codes.
"""

import io
import json

import numpy as np
import pandas as pd
import pytest

from cli import EXIT_CHECK_FAILED, EXIT_IO, EXIT_OK, EXIT_USAGE, axesion_cloud, load_config, main
from errors import ConfigError
from harness import aggregates_from_runs


def test_list(capsys):
    assert main(["list"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    rows = {line.split()[0]: line for line in lines[1:]}
    assert len(rows) == 20
    assert "-16.0917" in rows["g2"]
    assert "1.74" in rows["g14"]


def test_list_csv(capsys):
    assert main(["list", "--format", "csv"]) == EXIT_OK
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out), float_precision="round_trip")
    assert len(frame) == 20
    assert frame.set_index("function").loc["g8", "theoretical_best"] == 8.0128


def test_run_writes_trace_and_summary(tmp_path):
    out = tmp_path / "results"
    assert main(["run", "f1", "--variant", "original", "--epochs", "1", "--seed", "3", "--out", str(out)]) == EXIT_OK
    trace = pd.read_csv(out / "f1_original_seed3_trace.csv", float_precision="round_trip")
    assert list(trace.columns) == ["epoch", "best_f"]
    assert len(trace) == 1
    summary = json.loads((out / "f1_original_seed3_summary.json").read_text())
    assert summary["seed"] == 3 and summary["function"] == "f1"
    assert summary["best_f"] == trace["best_f"].iloc[-1]
    assert len(summary["best_x"]) == 1


def test_run_prints_summary(capsys):
    assert main(["run", "-f", "f5", "--variant", "new", "--seed", "7", "--epochs", "200"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["variant"] == "new"
    assert summary["best_f"] <= -9.99


def test_run_uses_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("STA_SEED", "5")
    assert main(["run", "f3", "--epochs", "2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["seed"] == 5


def test_run_is_bit_reproducible(tmp_path):
    for name in ("a", "b"):
        assert main(["run", "g4", "--epochs", "30", "--seed", "21", "--out", str(tmp_path / name)]) == EXIT_OK
    for suffix in ("trace.csv", "summary.json"):
        file = f"g4_new_seed21_{suffix}"
        assert (tmp_path / "a" / file).read_bytes() == (tmp_path / "b" / file).read_bytes()


def test_run_errors(tmp_path, capsys):
    assert main(["run", "nosuch"]) == EXIT_USAGE
    assert "unknown benchmark" in capsys.readouterr().err
    assert main(["run"]) == EXIT_USAGE
    assert main(["run", "f1", "--epochs", "abc"]) == EXIT_USAGE
    assert main(["run", "f1", "--fc", "1"]) == EXIT_USAGE

    blocker = tmp_path / "file.txt"
    blocker.write_text("not a directory")
    assert main(["run", "f1", "--epochs", "1", "--out", str(blocker / "sub")]) == EXIT_IO


def test_load_config(tmp_path):
    path = tmp_path / "suite.toml"
    path.write_text('functions = ["g4", "g5"]\nruns = 3\nalpha_min = 1e-5\n')
    assert load_config(path) == {"functions": ["g4", "g5"], "runs": 3, "alpha_min": 1e-5}


def test_malformed_config_lists_keys(tmp_path, capsys):
    path = tmp_path / "bad.toml"
    path.write_text('runs = "ten"\nbogus = 1\nepochs = 5\n')
    with pytest.raises(ConfigError) as exc:
        load_config(path)
    assert exc.value.keys == ["bogus", "runs"]

    assert main(["experiment", "--config", str(path)]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "bogus" in err and "runs" in err


def test_config_with_unknown_operator_is_usage_error(tmp_path, capsys):
    path = tmp_path / "order.toml"
    path.write_text('functions = "g5"\nruns = 1\nepochs = 2\noperator_order = ["rotate", "translate"]\n')
    assert main(["experiment", "--config", str(path), "--workers", "2"]) == EXIT_USAGE
    assert "operator_order" in capsys.readouterr().err


def test_unparsable_config(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("runs = = 3\n")
    assert main(["experiment", "--config", str(path)]) == EXIT_USAGE


def test_experiment_csv_round_trip(tmp_path):
    out = tmp_path / "runs.csv"
    args = ["experiment", "-f", "g4,g12", "--variant", "new", "--runs", "2", "--epochs", "20",
            "--seed", "4", "--format", "csv", "--out", str(out)]
    assert main(args) == EXIT_OK
    assert out.read_text().splitlines()[0] == "function,variant,run,seed,best_f,evaluations"

    runs = pd.read_csv(out, float_precision="round_trip")
    comparison = pd.read_csv(tmp_path / "runs_comparison.csv", float_precision="round_trip")
    assert len(runs) == 4 and len(comparison) == 2
    recomputed = aggregates_from_runs(runs)
    for _, row in comparison.iterrows():
        assert recomputed[(row["Function"], row["Variant"])] == (row["Best"], row["Average"])


def test_experiment_csv_to_stdout_keeps_comparison(capsys):
    """Without --out both tables are printed, runs first, separated by a blank line."""
    args = ["experiment", "-f", "g4", "--variant", "new", "--runs", "1", "--epochs", "2", "--format", "csv"]
    assert main(args) == EXIT_OK
    runs_text, comparison_text = capsys.readouterr().out.split("\n\n")
    runs = pd.read_csv(io.StringIO(runs_text), float_precision="round_trip")
    comparison = pd.read_csv(io.StringIO(comparison_text), float_precision="round_trip")
    assert list(runs.columns) == ["function", "variant", "run", "seed", "best_f", "evaluations"]
    assert list(comparison.columns) == ["Function", "Variant", "Best", "Average",
                                        "Reference-Best", "Reference-Average", "Pass"]
    assert comparison.loc[0, "Reference-Best"] == 0.3979
    assert comparison.loc[0, "Best"] == runs.loc[0, "best_f"]


def test_experiment_csv_and_json_agree(tmp_path):
    common = ["experiment", "-f", "g1", "--runs", "2", "--epochs", "10", "--seed", "8"]
    assert main(common + ["--format", "csv", "--out", str(tmp_path / "r.csv")]) == EXIT_OK
    assert main(common + ["--format", "json", "--out", str(tmp_path / "r.json")]) == EXIT_OK
    runs = pd.read_csv(tmp_path / "r.csv", float_precision="round_trip")
    data = json.loads((tmp_path / "r.json").read_text())
    assert runs["best_f"].tolist() == [r["best_f"] for r in data["runs"]]
    assert runs["seed"].tolist() == [r["seed"] for r in data["runs"]]
    assert runs["evaluations"].tolist() == [r["evaluations"] for r in data["runs"]]


def test_experiment_config_and_flags(tmp_path, capsys):
    path = tmp_path / "suite.toml"
    path.write_text('functions = "g6"\nvariants = ["original"]\nruns = 1\nepochs = 5\nformat = "json"\n')
    assert main(["experiment", "--config", str(path), "--epochs", "3"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["spec"]["epochs"] == 3
    assert data["spec"]["variants"] == ["original"]
    assert [r["function"] for r in data["comparison"]] == ["g6"]


def test_experiment_markdown(capsys):
    assert main(["experiment", "-f", "g7", "--variant", "new", "--runs", "1", "--epochs", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    header = out.splitlines()[0]
    for column in ("Function", "Variant", "Best", "Average", "Reference-Best", "Reference-Average", "Pass"):
        assert column in header
    assert "-186.7309" in out


def test_demo_axesion_defaults(tmp_path):
    out = tmp_path / "cloud.csv"
    assert main(["demo-axesion", "--out", str(out)]) == EXIT_OK
    cloud = pd.read_csv(out, float_precision="round_trip")
    assert list(cloud.columns) == ["x1", "x2", "x3"]
    assert len(cloud) == 1000
    moved = cloud.to_numpy() != 1.0
    assert np.all(moved.sum(axis=1) <= 1)
    freq = moved.sum(axis=0) / len(cloud)
    assert np.all(np.abs(freq - 1 / 3) < 0.05)


def test_demo_axesion_zero_delta():
    cloud = axesion_cloud([1.0, 2.0], delta=0.0, samples=50)
    assert np.all(cloud.to_numpy() == [1.0, 2.0])
    with pytest.raises(ConfigError):
        axesion_cloud([1.0], samples=0)


def test_spot_check(capsys):
    assert main(["spot-check", "-f", "g5,g13", "--format", "csv"]) == EXIT_OK
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out), float_precision="round_trip")
    assert frame["passed"].tolist() == [True, True]
    assert EXIT_CHECK_FAILED == 1


def test_landscape(tmp_path):
    out = tmp_path / "f3.csv"
    assert main(["landscape", "f3", "--points", "5", "--out", str(out)]) == EXIT_OK
    assert len(pd.read_csv(out, float_precision="round_trip")) == 25
    assert main(["landscape", "g9"]) == EXIT_USAGE
