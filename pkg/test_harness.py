#!/usr/bin/env python3
"""
Tests for harness.py: seeded experiments, aggregation and comparison tables.
"""

import logging
import pickle

import pytest

from errors import ConfigError, NotFound
from harness import (
    COMPARISON_COLUMNS, RUN_COLUMNS, ExperimentReport, ExperimentRow, ExperimentSpec, RunSummary,
    aggregate, aggregates_from_runs, compare_to_reference, reference_frame, report_to_dict,
    run_experiment, runs_frame,
)
from reference import ACCEPTANCE, get_reference, reference_rows
from rng import derive_seed
from sta_core import StaVariant


def fake_row(function, variant, best, average=None):
    summary = RunSummary(function, StaVariant.parse(variant), 0, 1, best, (0.0,), 33)
    return ExperimentRow(function, StaVariant.parse(variant), best, best if average is None else average, [summary])


def test_aggregate():
    assert aggregate([2.5]) == (2.5, 2.5)
    assert aggregate([1.0, 2.0, 3.0]) == (1.0, 2.0)
    # the mean of equal values never drops below the minimum through rounding
    best, average = aggregate([0.1] * 10)
    assert average >= best


def test_default_spec_covers_full_suite():
    spec = ExperimentSpec()
    assert len(spec.benchmarks) * len(spec.variants) == 40
    assert (spec.runs, spec.epochs, spec.master_seed) == (10, 1000, 42)


def test_spec_validation():
    with pytest.raises(ConfigError) as exc:
        ExperimentSpec(benchmarks=("g5", "f6"))
    assert exc.value.keys == ["functions"]
    with pytest.raises(ConfigError) as exc:
        ExperimentSpec(benchmarks=("g5",), runs=0)
    assert exc.value.keys == ["runs"]
    with pytest.raises(ConfigError):
        ExperimentSpec(benchmarks=("g5",), overrides={"sigma": 2.0})
    with pytest.raises(ConfigError):
        ExperimentSpec(benchmarks=("g5",), overrides={"fc": 0.5})
    with pytest.raises(ConfigError):
        ExperimentSpec(benchmarks=("g5",), variants=("fast",))


def test_spec_rejects_bad_operator_order():
    for order in (("rotate", "translate"), ("rotate", "rotate"), ()):
        with pytest.raises(ConfigError) as exc:
            ExperimentSpec(benchmarks=("g5",), operator_order=order)
        assert exc.value.keys == ["operator_order"]
    with pytest.raises(ConfigError) as exc:
        ExperimentSpec(benchmarks=("g5",), runs=0, operator_order=("swap",))
    assert exc.value.keys == ["runs", "operator_order"]


def test_spec_normalizes_operator_order():
    spec = ExperimentSpec(benchmarks=("g5",), variants=("new",), operator_order=["axesion", "rotate"])
    assert spec.operator_order == ("axesion", "rotate")
    assert spec.as_dict()["operator_order"] == ["axesion", "rotate"]


def test_operator_order_ignored_by_original_variant_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="harness"):
        ExperimentSpec(benchmarks=("g5",), variants=("original",), operator_order=("axesion", "rotate"))
    assert "ignored" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="harness"):
        ExperimentSpec(benchmarks=("g5",), operator_order=("axesion", "rotate"))
    assert caplog.text == ""


def test_config_error_keeps_keys_across_pickling():
    err = pickle.loads(pickle.dumps(ConfigError("bad order", ["operator_order"])))
    assert isinstance(err, ConfigError)
    assert err.keys == ["operator_order"]
    assert str(err) == "bad order"


def test_run_experiment_structure():
    spec = ExperimentSpec(benchmarks=("g5",), variants=("new",), runs=3, epochs=200)
    report = run_experiment(spec)
    assert len(report.rows) == 1
    row = report.row("g5", "new")
    assert len(row.runs) == 3
    assert [s.seed for s in row.runs] == [derive_seed(42, i) for i in range(3)]
    assert [s.run for s in row.runs] == [0, 1, 2]
    assert row.average >= row.best
    assert row.best == pytest.approx(-1.0316, abs=1e-3)


def test_single_run_average_equals_best():
    report = run_experiment(ExperimentSpec(benchmarks=("f3",), variants=("original",), runs=1, epochs=5))
    row = report.rows[0]
    assert row.average == row.best


def test_f1_original_ten_epochs():
    report = run_experiment(ExperimentSpec(benchmarks=("f1",), variants=("original",), runs=10, epochs=10))
    assert report.rows[0].best == pytest.approx(-3.0, abs=1e-6)


def test_experiment_is_reproducible():
    spec = ExperimentSpec(benchmarks=("g4", "f4"), runs=2, epochs=20, master_seed=9)
    assert report_to_dict(run_experiment(spec)) == report_to_dict(run_experiment(spec))


def test_parallel_matches_sequential():
    kwargs = dict(benchmarks=("g1", "g12"), variants=("new",), runs=4, epochs=15)
    sequential = run_experiment(ExperimentSpec(**kwargs, workers=1))
    parallel = run_experiment(ExperimentSpec(**kwargs, workers=2))
    assert report_to_dict(sequential) == report_to_dict(parallel)


def test_aggregates_recomputed_from_runs():
    report = run_experiment(ExperimentSpec(benchmarks=("g6",), runs=3, epochs=10))
    frame = runs_frame(report)
    assert list(frame.columns) == RUN_COLUMNS
    assert len(frame) == 2 * 3
    recomputed = aggregates_from_runs(frame)
    for row in report.rows:
        assert recomputed[(row.function, row.variant.value)] == (row.best, row.average)


def test_compare_to_reference_pass_flags():
    report = ExperimentReport(ExperimentSpec(benchmarks=("g7",)), [
        fake_row("g7", "new", -186.7309),
        fake_row("g4", "original", 0.3979),
        fake_row("f4", "new", 1e-3),
    ])
    table = compare_to_reference(report)
    assert list(table.columns) == COMPARISON_COLUMNS
    assert table["Pass"].tolist() == [True, True, False]
    g7 = table.iloc[0]
    assert g7["Reference-Best"] == -186.7309 and g7["Reference-Average"] == -186.7309
    # group one tables publish no averages
    assert table.iloc[2]["Reference-Best"] == pytest.approx(3.7678e-12)


def test_report_dict_has_no_timings():
    report = run_experiment(ExperimentSpec(benchmarks=("f1",), variants=("new",), runs=2, epochs=3))
    data = report_to_dict(report)
    assert set(data) == {"spec", "comparison", "runs"}
    assert "wall_time" not in data["runs"][0]
    assert data["spec"]["functions"] == ["f1"]
    assert data["comparison"][0]["Reference-Average"] is None


def test_reference_tables():
    assert set(ACCEPTANCE) == {f"f{i}" for i in range(1, 6)} | {f"g{i}" for i in range(1, 16)}
    assert get_reference("g3", "new").average == 0.9980
    assert get_reference("g3", StaVariant.ORIGINAL).average == 3.9354
    assert len(reference_rows("g11")) == 4
    frame = reference_frame("f2")
    assert frame["algorithm"].tolist() == ["HRO", "ARSET", "RSW", "STA(original)", "STA(new)"]
    with pytest.raises(NotFound):
        reference_frame("f6")


def test_acceptance_rules():
    assert ACCEPTANCE["f4"].passes(3.7678e-12)
    assert not ACCEPTANCE["f4"].passes(1e-3)
    assert ACCEPTANCE["g7"].passes(-186.725)
    assert not ACCEPTANCE["g3"].passes(float("nan"))
