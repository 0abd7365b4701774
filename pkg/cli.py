#!/usr/bin/env python3
"""
Command-line front end for the State Transition Algorithm.

Usage:
    python cli.py list                                  # benchmark table
    python cli.py run f5 --variant new --seed 7         # one run, summary on stdout
    python cli.py run g7 --out results/                 # plus trace CSV and summary JSON
    python cli.py experiment --config suite.toml        # full suite, comparison table
    python cli.py experiment -f g3,g11 --runs 10 --format md --out g.md
    python cli.py demo-axesion --x 1,1,1 --samples 1000 --out cloud.csv
    python cli.py spot-check                            # formula self-test
    python cli.py landscape f3 --points 101 --out f3.csv

Environment:
    STA_SEED       master seed when --seed is absent (default 42)
    STA_LOG_LEVEL  logging level (default WARNING)
    STA_WORKERS    worker processes for experiments (default 1)

Exit codes: 0 success, 1 failed spot check, 2 usage/config error, 3 I/O error.
"""

import argparse
import json
import logging
import os
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

import numpy as np
import pandas as pd

from benchmarks import benchmark_frame, get_all_benchmarks, get_benchmark, landscape, spot_check
from errors import ConfigError, NotFound
from harness import (
    DEFAULT_MASTER_SEED, DEFAULT_RUNS, ExperimentSpec,
    compare_to_reference, report_to_dict, run_experiment, runs_frame,
)
from rng import RandomSource
from sta_core import DEFAULT_EPOCHS, DEFAULT_OPERATOR_ORDER, RunConfig, StaVariant, run
from transforms import State, TransformParams, op_axesion

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "md")
FLOAT_FORMAT = "%.17g"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

PARAM_FLAGS = {
    "se": int,
    "alpha_max": float,
    "alpha_min": float,
    "beta": float,
    "gamma": float,
    "delta": float,
    "fc": float,
}

# Flat experiment config file: key -> accepted Python types
CONFIG_KEYS = {
    "functions": (list, str),
    "variants": (list, str),
    "runs": (int,),
    "epochs": (int,),
    "seed": (int,),
    "workers": (int,),
    "format": (str,),
    "out": (str,),
    "operator_order": (list,),
    "se": (int,),
    "alpha_max": (float, int),
    "alpha_min": (float, int),
    "beta": (float, int),
    "gamma": (float, int),
    "delta": (float, int),
    "fc": (float, int),
}


class UsageError(Exception):
    """Bad command-line input that argparse could not catch."""


def load_config(path: str | Path) -> dict:
    """Read and validate a flat TOML experiment config."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"cannot parse {path}: {e}") from None
    bad = []
    for key, value in data.items():
        allowed = CONFIG_KEYS.get(key)
        if allowed is None or isinstance(value, bool) or not isinstance(value, allowed):
            bad.append(key)
    if bad:
        raise ConfigError(f"malformed config {path}: offending keys: {', '.join(sorted(bad))}", sorted(bad))
    return data


def _split(values) -> list[str]:
    """Accept repeated flags and comma-separated lists alike."""
    if values is None:
        return []
    if isinstance(values, str):
        values = [values]
    out = []
    for value in values:
        out.extend(v.strip() for v in str(value).split(",") if v.strip())
    return out


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"environment variable {name} must be an integer, got '{raw}'", [name]) from None


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    return _env_int("STA_SEED", DEFAULT_MASTER_SEED)


def _overrides(args, base: dict | None = None) -> dict:
    values = {k: base[k] for k in PARAM_FLAGS if base and k in base}
    for key in PARAM_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    return {k: PARAM_FLAGS[k](v) for k, v in values.items()}


def _fmt_value(value) -> str:
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (float, np.floating)):
        if value == 0 or 1e-3 <= abs(value) < 1e6:
            return f"{value:.4f}"
        return f"{value:.4e}"
    return str(value)


def to_markdown(frame: pd.DataFrame) -> str:
    """Markdown table with values printed the way result tables usually are."""
    return frame.map(_fmt_value).to_markdown(index=False) + "\n"


def _render(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT)
    if fmt == "json":
        return frame.to_json(orient="records", indent=2, double_precision=15) + "\n"
    return to_markdown(frame)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _emit(text: str, out: str | None) -> None:
    if out:
        _write(Path(out), text)
    else:
        sys.stdout.write(text)


# === SUBCOMMANDS ===

def cmd_list(args) -> int:
    frame = benchmark_frame()
    if args.format is None and not args.out:
        listing = frame.assign(theoretical_best=[f"{v:.10g}" for v in frame["theoretical_best"]])
        print(listing.to_string(index=False))
        return EXIT_OK
    _emit(_render(frame, args.format or "csv"), args.out)
    return EXIT_OK


def run_summary(result, epochs: int) -> dict:
    return {
        "function": result.benchmark,
        "variant": result.variant.value,
        "seed": result.seed,
        "epochs": epochs,
        "best_f": result.best.f,
        "best_x": [float(v) for v in result.best.x],
        "evaluations": result.evaluations,
    }


def cmd_run(args) -> int:
    name = args.function or args.fn
    if not name:
        raise UsageError("run needs a benchmark name (positional or --function)")
    bench = get_benchmark(name)
    variant = StaVariant.parse(args.variant)
    params = TransformParams.for_variant(variant, **_overrides(args))
    cfg = RunConfig(variant=variant, params=params, epochs=args.epochs, seed=resolve_seed(args.seed))
    result = run(cfg, bench)
    summary = run_summary(result, cfg.epochs)
    text = json.dumps(summary, indent=2) + "\n"
    if args.out:
        stem = f"{bench.name}_{variant.value}_seed{cfg.seed}"
        out = Path(args.out)
        _write(out / f"{stem}_trace.csv", result.trace_frame().to_csv(index=False, float_format=FLOAT_FORMAT))
        _write(out / f"{stem}_summary.json", text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_experiment_spec(args) -> tuple[ExperimentSpec, str, str | None]:
    """Merge config file and flags (flags win) into an ExperimentSpec."""
    config = load_config(args.config) if args.config else {}
    functions = _split(args.function) or _split(config.get("functions"))
    variants = _split(args.variant) or _split(config.get("variants")) or ["original", "new"]
    spec = ExperimentSpec(
        benchmarks=tuple(functions) if functions else tuple(b.name for b in get_all_benchmarks()),
        variants=tuple(variants),
        runs=args.runs if args.runs is not None else config.get("runs", DEFAULT_RUNS),
        epochs=args.epochs if args.epochs is not None else config.get("epochs", DEFAULT_EPOCHS),
        master_seed=resolve_seed(args.seed if args.seed is not None else config.get("seed")),
        overrides=_overrides(args, config),
        operator_order=config.get("operator_order", DEFAULT_OPERATOR_ORDER),
        workers=(args.workers if args.workers is not None
                 else config.get("workers", _env_int("STA_WORKERS", 1))),
    )
    fmt = args.format or config.get("format", "md")
    if fmt not in FORMATS:
        raise ConfigError(f"unknown output format '{fmt}' (use {', '.join(FORMATS)})", ["format"])
    out = args.out or config.get("out")
    return spec, fmt, out


def cmd_experiment(args) -> int:
    spec, fmt, out = build_experiment_spec(args)
    report = run_experiment(spec)
    comparison = compare_to_reference(report)
    if fmt == "csv":
        runs_text = runs_frame(report).to_csv(index=False, float_format=FLOAT_FORMAT)
        if out:
            path = Path(out)
            _write(path, runs_text)
            _write(path.with_name(f"{path.stem}_comparison.csv"),
                   comparison.to_csv(index=False, float_format=FLOAT_FORMAT))
        else:
            # runs table, blank line, comparison table
            sys.stdout.write(runs_text)
            sys.stdout.write("\n")
            sys.stdout.write(comparison.to_csv(index=False, float_format=FLOAT_FORMAT))
    elif fmt == "json":
        _emit(json.dumps(report_to_dict(report), indent=2) + "\n", out)
    else:
        _emit(to_markdown(comparison), out)
    return EXIT_OK


def axesion_cloud(x, delta: float = 1.0, samples: int = 1000, seed: int = DEFAULT_MASTER_SEED) -> pd.DataFrame:
    """Independent axesion candidates around x, one row per sample."""
    if samples < 1:
        raise ConfigError("samples must be at least 1", ["samples"])
    state = State(np.asarray(x, dtype=float))
    params = TransformParams(delta=delta, se=samples)
    cands = op_axesion(state, params, RandomSource(seed))
    return pd.DataFrame(cands.points, columns=[f"x{i + 1}" for i in range(state.dim)])


def cmd_demo_axesion(args) -> int:
    try:
        x = [float(v) for v in _split(args.x)]
    except ValueError:
        raise UsageError(f"--x must be a comma-separated list of numbers, got '{args.x}'") from None
    cloud = axesion_cloud(x, args.delta, args.samples, resolve_seed(args.seed))
    _emit(cloud.to_csv(index=False, float_format=FLOAT_FORMAT), args.out)
    return EXIT_OK


def cmd_spot_check(args) -> int:
    names = _split(args.function) or [b.name for b in get_all_benchmarks()]
    checks = [spot_check(get_benchmark(n), samples=args.samples) for n in names]
    frame = pd.DataFrame([
        {
            "function": c.name,
            "method": c.method,
            "value": c.value,
            "theoretical_best": c.theoretical_best,
            "deviation": c.deviation,
            "passed": c.passed,
        }
        for c in checks
    ])
    _emit(_render(frame, args.format or "md"), args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


def cmd_landscape(args) -> int:
    grid = landscape(get_benchmark(args.fn), args.points)
    _emit(grid.to_csv(index=False, float_format=FLOAT_FORMAT), args.out)
    return EXIT_OK


# === PARSER ===

def _add_param_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_argument_group("transform parameters")
    group.add_argument("--se", type=int, help="candidates per operator call (default 32)")
    group.add_argument("--alpha-max", dest="alpha_max", type=float, help="largest rotation factor (default 1)")
    group.add_argument("--alpha-min", dest="alpha_min", type=float, help="smallest rotation factor (default 1e-4)")
    group.add_argument("--beta", type=float, help="translation factor (default 1)")
    group.add_argument("--gamma", type=float, help="expansion factor (default 1)")
    group.add_argument("--delta", type=float, help="axesion factor (default 1)")
    group.add_argument("--fc", type=float, help="alpha lessening coefficient (default 4 original, 2 new)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    common.add_argument("-q", "--quiet", action="store_true", help="errors only")

    parser = argparse.ArgumentParser(prog="sta", description="State Transition Algorithm toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", parents=[common], help="list the benchmark problems")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_list)

    p = sub.add_parser("run", parents=[common], help="run one optimization")
    p.add_argument("fn", nargs="?", help="benchmark name")
    p.add_argument("-f", "--function", help="benchmark name")
    p.add_argument("--variant", choices=[v.value for v in StaVariant], default=StaVariant.NEW.value)
    p.add_argument("--epochs", type=int, default=DEFAULT_EPOCHS)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="directory for the trace CSV and summary JSON")
    _add_param_flags(p)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("experiment", parents=[common], help="run a benchmark suite")
    p.add_argument("--config", help="flat TOML config file")
    p.add_argument("-f", "--function", action="append", help="benchmark name(s), repeatable or comma-separated")
    p.add_argument("--variant", action="append", help="original and/or new")
    p.add_argument("--runs", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out")
    _add_param_flags(p)
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("demo-axesion", parents=[common], help="point cloud of independent axesion moves")
    p.add_argument("--x", default="1,1,1", help="starting point, comma-separated (default 1,1,1)")
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_demo_axesion)

    p = sub.add_parser("spot-check", parents=[common], help="check coded formulas against their best values")
    p.add_argument("-f", "--function", action="append")
    p.add_argument("--samples", type=int, default=10 ** 6, help="random sample size for problems without an optimizer")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_spot_check)

    p = sub.add_parser("landscape", parents=[common], help="objective values on a grid (1-D/2-D problems)")
    p.add_argument("fn")
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_landscape)
    return parser


def configure_logging(verbose: int = 0, quiet: bool = False) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = os.environ.get("STA_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose, args.quiet)

    try:
        return args.handler(args)
    except (NotFound, ConfigError, UsageError) as e:
        keys = getattr(e, "keys", None)
        suffix = f" [keys: {', '.join(keys)}]" if keys else ""
        print(f"error: {e}{suffix}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.warning("output failed: %s", e)
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
