#!/usr/bin/env python3
"""
Full-protocol checks: 10 runs x 1000 epochs with master seed 42.

These take minutes, so they only run with STA_ACCEPTANCE=1:

    STA_ACCEPTANCE=1 pytest test_acceptance.py
"""

import json
import os

import numpy as np
import pytest

from benchmarks import benchmark_names, get_benchmark
from cli import main
from harness import ExperimentSpec, report_to_dict, run_experiment
from reference import ACCEPTANCE
from rng import derive_seed
from sta_core import RunConfig, StaVariant, run

pytestmark = pytest.mark.skipif(os.environ.get("STA_ACCEPTANCE") != "1", reason="set STA_ACCEPTANCE=1")


@pytest.fixture(scope="module")
def new_suite():
    return run_experiment(ExperimentSpec(variants=("new",), workers=int(os.environ.get("STA_WORKERS", "1"))))


@pytest.mark.parametrize("name", benchmark_names())
def test_new_variant_meets_published_best(new_suite, name):
    row = new_suite.row(name, "new")
    assert ACCEPTANCE[name].passes(row.best), f"{name}: best {row.best:.10g}"


def test_f1_both_variants_within_ten_epochs():
    for variant in StaVariant:
        report = run_experiment(ExperimentSpec(benchmarks=("f1",), variants=(variant,), runs=10, epochs=10))
        row = report.rows[0]
        assert row.best == pytest.approx(-3.0, abs=1e-6)
        best_run = min(row.runs, key=lambda s: s.best_f)
        assert best_run.best_x[0] == pytest.approx(3.0, abs=1e-4)


def test_f2_both_variants():
    report = run_experiment(ExperimentSpec(benchmarks=("f2",)))
    for row in report.rows:
        assert row.best <= 1e-20


def test_f5_corner():
    row = run_experiment(ExperimentSpec(benchmarks=("f5",), variants=("new",))).rows[0]
    best_run = min(row.runs, key=lambda s: s.best_f)
    assert row.best == pytest.approx(-10.0, abs=1e-6)
    assert np.allclose(best_run.best_x, [-10.0, 0.0], atol=1e-4)


def test_g5_best_and_average():
    row = run_experiment(ExperimentSpec(benchmarks=("g5",), variants=("new",))).rows[0]
    assert row.best == pytest.approx(-1.0316, abs=1e-3)
    assert row.average == pytest.approx(-1.0316, abs=1e-3)


def test_new_variant_averages_beat_original_on_g3_and_g11():
    """Holds for at least two of three master seeds."""
    for name in ("g3", "g11"):
        wins = 0
        for master in (42, 43, 44):
            report = run_experiment(ExperimentSpec(benchmarks=(name,), master_seed=master))
            if report.row(name, "new").average < report.row(name, "original").average:
                wins += 1
        assert wins >= 2, name


def test_traces_monotone():
    """Every run of the full protocol, all ten derived seeds."""
    for name in benchmark_names():
        for variant in StaVariant:
            for index in range(10):
                result = run(RunConfig(variant, seed=derive_seed(42, index)), get_benchmark(name))
                values = [f for _, f in result.trace]
                assert all(b <= a for a, b in zip(values, values[1:])), (name, variant, index)


def test_cli_f5_seed_seven(capsys):
    assert main(["run", "f5", "--variant", "new", "--seed", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["best_f"] == pytest.approx(-10.0, abs=1e-6)


def test_cli_markdown_g7(capsys):
    assert main(["experiment", "-f", "g7", "--variant", "new"]) == 0
    g7 = next(line for line in capsys.readouterr().out.splitlines() if line.startswith("| g7"))
    assert g7.count("-186.7309") >= 2


def test_reports_are_bit_reproducible():
    spec = ExperimentSpec(benchmarks=("g3", "g9"))
    assert json.dumps(report_to_dict(run_experiment(spec))) == json.dumps(report_to_dict(run_experiment(spec)))
