"""
Experiment runner: independent seeded runs per (benchmark, variant),
aggregated into Best / Average columns and compared with published results.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np
import pandas as pd

from benchmarks import benchmark_names, get_benchmark
from errors import ConfigError
from reference import ACCEPTANCE, get_reference, reference_rows
from rng import derive_seed
from sta_core import DEFAULT_EPOCHS, DEFAULT_OPERATOR_ORDER, RunConfig, StaVariant, run, validate_operator_order
from transforms import TransformParams

logger = logging.getLogger(__name__)

DEFAULT_RUNS = 10
DEFAULT_MASTER_SEED = 42
PARAM_KEYS = tuple(f.name for f in fields(TransformParams))

RUN_COLUMNS = ["function", "variant", "run", "seed", "best_f", "evaluations"]
COMPARISON_COLUMNS = ["Function", "Variant", "Best", "Average", "Reference-Best", "Reference-Average", "Pass"]


@dataclass(frozen=True)
class ExperimentSpec:
    """Which benchmarks and variants to run, how often and how long."""
    benchmarks: tuple[str, ...] = field(default_factory=lambda: tuple(benchmark_names()))
    variants: tuple[StaVariant, ...] = (StaVariant.ORIGINAL, StaVariant.NEW)
    runs: int = DEFAULT_RUNS
    epochs: int = DEFAULT_EPOCHS
    master_seed: int = DEFAULT_MASTER_SEED
    overrides: dict = field(default_factory=dict)
    operator_order: tuple[str, ...] = DEFAULT_OPERATOR_ORDER
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "benchmarks", tuple(self.benchmarks))
        object.__setattr__(self, "variants", tuple(StaVariant.parse(v) for v in self.variants))
        bad = []
        known = set(benchmark_names())
        unknown = [name for name in self.benchmarks if name not in known]
        if unknown or not self.benchmarks:
            raise ConfigError(f"unknown benchmark(s): {', '.join(unknown) or '(none given)'}", ["functions"])
        if not self.variants:
            bad.append("variants")
        for key in ("runs", "epochs", "workers"):
            value = getattr(self, key)
            if not isinstance(value, (int, np.integer)) or value < 1:
                bad.append(key)
        bad.extend(sorted(set(self.overrides) - set(PARAM_KEYS)))
        try:
            object.__setattr__(self, "operator_order", validate_operator_order(self.operator_order))
        except ConfigError:
            bad.append("operator_order")
        if bad:
            raise ConfigError(f"invalid experiment settings: {', '.join(bad)}", bad)
        if self.operator_order != DEFAULT_OPERATOR_ORDER and StaVariant.NEW not in self.variants:
            logger.warning("operator_order %s only applies to the new variant; ignored",
                           ",".join(self.operator_order))
        # surface invalid parameter values now rather than inside a worker
        for variant in self.variants:
            self.params_for(variant)

    def params_for(self, variant: StaVariant) -> TransformParams:
        return TransformParams.for_variant(variant, **self.overrides)

    def as_dict(self) -> dict:
        return {
            "functions": list(self.benchmarks),
            "variants": [v.value for v in self.variants],
            "runs": self.runs,
            "epochs": self.epochs,
            "seed": self.master_seed,
            "overrides": dict(self.overrides),
            "operator_order": list(self.operator_order),
        }


@dataclass
class RunSummary:
    """Per-run record kept in a report."""
    function: str
    variant: StaVariant
    run: int
    seed: int
    best_f: float
    best_x: tuple[float, ...]
    evaluations: int
    wall_time: float = 0.0


@dataclass
class ExperimentRow:
    """Aggregate over the runs of one (benchmark, variant) pair."""
    function: str
    variant: StaVariant
    best: float
    average: float
    runs: list[RunSummary]

    @property
    def reference(self):
        return get_reference(self.function, self.variant.value)

    @property
    def passed(self) -> bool | None:
        rule = ACCEPTANCE.get(self.function)
        if rule is None:
            return None
        return rule.passes(self.best)


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    rows: list[ExperimentRow]

    def row(self, function: str, variant) -> ExperimentRow:
        variant = StaVariant.parse(variant)
        for r in self.rows:
            if r.function == function and r.variant is variant:
                return r
        raise KeyError((function, variant.value))


def aggregate(values: list[float]) -> tuple[float, float]:
    """Best (minimum) and arithmetic mean of per-run best values."""
    best = min(values)
    average = math.fsum(values) / len(values)
    return best, max(average, best)


def _execute(task: tuple) -> RunSummary:
    name, variant, index, seed, epochs, overrides, order = task
    bench = get_benchmark(name)
    params = TransformParams.for_variant(variant, **overrides)
    cfg = RunConfig(variant=variant, params=params, epochs=epochs, seed=seed, operator_order=order)
    result = run(cfg, bench)
    return RunSummary(
        function=name,
        variant=StaVariant.parse(variant),
        run=index,
        seed=seed,
        best_f=result.best.f,
        best_x=tuple(float(v) for v in result.best.x),
        evaluations=result.evaluations,
        wall_time=result.wall_time,
    )


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Execute every (benchmark, variant, run) and aggregate per pair."""
    seeds = [derive_seed(spec.master_seed, i) for i in range(spec.runs)]
    tasks = [
        (name, variant.value, i, seeds[i], spec.epochs, dict(spec.overrides), spec.operator_order)
        for name in spec.benchmarks
        for variant in spec.variants
        for i in range(spec.runs)
    ]
    logger.info("experiment: %d benchmark(s) x %d variant(s) x %d run(s), %d epochs, master seed %d",
                len(spec.benchmarks), len(spec.variants), spec.runs, spec.epochs, spec.master_seed)

    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            summaries = list(pool.map(_execute, tasks, chunksize=max(1, spec.runs // 2)))
    else:
        summaries = [_execute(task) for task in tasks]

    rows = []
    for start in range(0, len(summaries), spec.runs):
        group = summaries[start:start + spec.runs]
        best, average = aggregate([s.best_f for s in group])
        row = ExperimentRow(group[0].function, group[0].variant, best, average, group)
        logger.info("%s %s: best=%.10g average=%.10g", row.function, row.variant.value, best, average)
        rows.append(row)
    return ExperimentReport(spec, rows)


def compare_to_reference(report: ExperimentReport) -> pd.DataFrame:
    """Measured Best/Average beside the published STA values, with a pass flag."""
    records = []
    for row in report.rows:
        ref = row.reference
        records.append({
            "Function": row.function,
            "Variant": row.variant.value,
            "Best": row.best,
            "Average": row.average,
            "Reference-Best": ref.best if ref else None,
            "Reference-Average": ref.average if ref else None,
            "Pass": row.passed,
        })
    return pd.DataFrame(records, columns=COMPARISON_COLUMNS)


def runs_frame(report: ExperimentReport) -> pd.DataFrame:
    """One line per run: function, variant, run, seed, best_f, evaluations."""
    return pd.DataFrame(
        [
            {
                "function": s.function,
                "variant": s.variant.value,
                "run": s.run,
                "seed": s.seed,
                "best_f": s.best_f,
                "evaluations": s.evaluations,
            }
            for row in report.rows
            for s in row.runs
        ],
        columns=RUN_COLUMNS,
    )


def aggregates_from_runs(frame: pd.DataFrame) -> dict[tuple[str, str], tuple[float, float]]:
    """Recompute (best, average) per (function, variant) from a per-run table."""
    out = {}
    for (function, variant), group in frame.groupby(["function", "variant"], sort=False):
        ordered = group.sort_values("run")
        out[(function, variant)] = aggregate([float(v) for v in ordered["best_f"]])
    return out


def _clean(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, np.generic):
        return value.item()
    return value


def report_to_dict(report: ExperimentReport) -> dict:
    """JSON-ready report: spec, comparison table and per-run records (no timings)."""
    comparison = [
        {key: _clean(value) for key, value in record.items()}
        for record in compare_to_reference(report).to_dict(orient="records")
    ]
    runs = [
        {
            "function": s.function,
            "variant": s.variant.value,
            "run": s.run,
            "seed": s.seed,
            "best_f": s.best_f,
            "best_x": list(s.best_x),
            "evaluations": s.evaluations,
        }
        for row in report.rows
        for s in row.runs
    ]
    return {"spec": report.spec.as_dict(), "comparison": comparison, "runs": runs}


def reference_frame(function: str) -> pd.DataFrame:
    """Every published row for one benchmark (all algorithms)."""
    get_benchmark(function)
    return pd.DataFrame(
        [
            {
                "algorithm": r.algorithm,
                "best": r.best,
                "average": r.average,
                "best_x": ", ".join(f"{v:.6g}" for v in r.best_x) if r.best_x else "",
            }
            for r in reference_rows(function)
        ],
        columns=["algorithm", "best", "average", "best_x"],
    )
