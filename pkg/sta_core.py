"""
Drivers for the original and the new State Transition Algorithm.

Original: every epoch sweeps alpha from alpha_max down to alpha_min
(divided by fc = 4 each pass), trying rotation at each alpha, then one
expansion. New: each epoch runs rotation, expansion and axesion once with
the current alpha; alpha is divided by fc = 2 after the epoch and wraps back
to alpha_max once it drops below alpha_min.

Every improvement found by an operator is followed by a translation along
the direction from the previous best to the new one.
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator

import numpy as np
import pandas as pd

from benchmarks import Benchmark, evaluate_batch
from errors import ConfigError, DegenerateDirection, DegenerateState
from rng import RandomSource
from transforms import (
    OPERATORS, CandidateSet, State, TransformParams,
    alpha_schedule, best_index, op_translate,
)

logger = logging.getLogger(__name__)

DEFAULT_EPOCHS = 1000
DEFAULT_OPERATOR_ORDER = ("rotate", "expand", "axesion")


class StaVariant(str, Enum):
    ORIGINAL = "original"
    NEW = "new"

    @classmethod
    def parse(cls, value) -> "StaVariant":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigError(f"unknown variant '{value}' (use original or new)", ["variant"]) from None


def validate_operator_order(order) -> tuple[str, ...]:
    """Normalize an operator order to a tuple of distinct known operator names."""
    if isinstance(order, str):
        order = (order,)
    order = tuple(order)
    if not order or len(set(order)) != len(order) or not set(order) <= set(OPERATORS):
        raise ConfigError(
            f"operator_order must list distinct names from {sorted(OPERATORS)}, got {order}",
            ["operator_order"],
        )
    return order


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one seeded run."""
    variant: StaVariant
    params: TransformParams | None = None
    epochs: int = DEFAULT_EPOCHS
    seed: int = 0
    x0: tuple[float, ...] | None = None
    operator_order: tuple[str, ...] = DEFAULT_OPERATOR_ORDER

    def __post_init__(self):
        object.__setattr__(self, "variant", StaVariant.parse(self.variant))
        if self.params is None:
            object.__setattr__(self, "params", TransformParams.for_variant(self.variant))
        if not isinstance(self.epochs, (int, np.integer)) or self.epochs < 1:
            raise ConfigError(f"epochs must be a positive integer, got {self.epochs!r}", ["epochs"])
        object.__setattr__(self, "operator_order", validate_operator_order(self.operator_order))
        if self.x0 is not None:
            object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))


@dataclass
class RunResult:
    """Outcome of one seeded run."""
    best: State
    trace: list[tuple[int, float]]
    evaluations: int
    seed: int
    steps: int = 0
    variant: StaVariant = StaVariant.NEW
    benchmark: str = ""
    wall_time: float = field(default=0.0, compare=False)

    def trace_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.trace, columns=["epoch", "best_f"])


class CountingObjective:
    """Batch objective that counts evaluated points and maps NaN to +inf."""

    def __init__(self, bench: Benchmark):
        self.bench = bench
        self.calls = 0

    def __call__(self, points: np.ndarray) -> np.ndarray:
        values = evaluate_batch(self.bench, points)
        self.calls += len(values)
        nan = np.isnan(values)
        if nan.any():
            logger.debug("%s: %d NaN objective value(s) treated as +inf", self.bench.name, int(nan.sum()))
            values = np.where(nan, np.inf, values)
        return values


def greedy_step(incumbent: State, cands: CandidateSet,
                objective: Callable[[np.ndarray], np.ndarray]) -> tuple[State, bool]:
    """Adopt the best candidate only if it is strictly better than the incumbent."""
    values = np.asarray(objective(cands.points), dtype=float)
    k = best_index(values)
    value = values[k]
    if np.isnan(value) or not value < incumbent.f:
        return incumbent, False
    return State(cands.points[k], float(value)), True


def initial_state(bench: Benchmark, rng: RandomSource,
                  objective: Callable[[np.ndarray], np.ndarray] | None = None) -> State:
    """Uniform random point in the benchmark box (surrogate box where unbounded), evaluated."""
    lo, hi = bench.init_box()
    x = np.asarray(rng.uniform(lo, hi), dtype=float).reshape(-1)
    return _evaluated(x, bench, objective)


def _evaluated(x: np.ndarray, bench: Benchmark, objective) -> State:
    objective = objective or CountingObjective(bench)
    value = float(objective(x[None, :])[0])
    return State(x, np.inf if np.isnan(value) else value)


def periodic_alpha(params: TransformParams) -> Iterator[float]:
    """Alpha per epoch for the new variant: decay by fc, wrap to alpha_max below alpha_min."""
    alpha = params.alpha
    while True:
        yield alpha
        alpha = alpha / params.fc
        if alpha < params.alpha_min:
            alpha = params.alpha_max


class _Search:
    """Incumbent, translation history and bookkeeping shared by both drivers."""

    def __init__(self, cfg: RunConfig, bench: Benchmark):
        self.cfg = cfg
        self.bench = bench
        self.rng = RandomSource(cfg.seed)
        self.objective = CountingObjective(bench)
        self.lo, self.hi = bench.lower, bench.upper
        self.steps = 0
        self.trace: list[tuple[int, float]] = []
        if cfg.x0 is not None:
            if len(cfg.x0) != bench.dim:
                raise ConfigError(
                    f"initial point has {len(cfg.x0)} components, {bench.name} needs {bench.dim}", ["x0"]
                )
            self.best = _evaluated(np.array(cfg.x0, dtype=float), bench, self.objective)
        else:
            self.best = initial_state(bench, self.rng, self.objective)
        # no translation until a first improvement gives a direction
        self.prev: State | None = None
        self.started = time.perf_counter()

    def _greedy(self, cands: CandidateSet) -> bool:
        cands = cands.clipped(self.lo, self.hi)
        candidate, improved = greedy_step(self.best, cands, self.objective)
        self.steps += 1
        if improved:
            self.prev, self.best = self.best, candidate
        return improved

    def _translate(self, params: TransformParams) -> None:
        if self.prev is None:
            return
        try:
            cands = op_translate(self.best, self.prev, params, self.rng)
        except DegenerateDirection:
            logger.debug("%s: translation skipped, no direction", self.bench.name)
            return
        self._greedy(cands)

    def apply(self, name: str, params: TransformParams) -> bool:
        """Run one operator, then translate if it improved the incumbent."""
        try:
            cands = OPERATORS[name](self.best, params, self.rng)
        except DegenerateState:
            logger.debug("%s: %s skipped at the zero vector", self.bench.name, name)
            return False
        if self._greedy(cands):
            self._translate(params)
            return True
        return False

    def record(self, epoch: int) -> None:
        self.trace.append((epoch, self.best.f))

    def result(self) -> RunResult:
        wall = time.perf_counter() - self.started
        logger.info(
            "%s %s seed=%d: best f=%.10g after %d epochs (%d evaluations, %.2fs)",
            self.bench.name, self.cfg.variant.value, self.cfg.seed, self.best.f,
            len(self.trace), self.objective.calls, wall,
        )
        return RunResult(
            best=self.best,
            trace=self.trace,
            evaluations=self.objective.calls,
            seed=self.cfg.seed,
            steps=self.steps,
            variant=self.cfg.variant,
            benchmark=self.bench.name,
            wall_time=wall,
        )


def run_original(cfg: RunConfig, bench: Benchmark) -> RunResult:
    """Original STA: full alpha sweep with rotation every epoch, then expansion."""
    if cfg.variant is not StaVariant.ORIGINAL:
        raise ConfigError(f"run_original called with variant {cfg.variant.value}", ["variant"])
    search = _Search(cfg, bench)
    sweep = [cfg.params.with_alpha(a) for a in alpha_schedule(cfg.params)]
    for epoch in range(1, cfg.epochs + 1):
        for params in sweep:
            search.apply("rotate", params)
        search.apply("expand", cfg.params)
        search.record(epoch)
    return search.result()


def run_new(cfg: RunConfig, bench: Benchmark) -> RunResult:
    """New STA: rotation, expansion and axesion once per epoch with a periodic alpha."""
    if cfg.variant is not StaVariant.NEW:
        raise ConfigError(f"run_new called with variant {cfg.variant.value}", ["variant"])
    search = _Search(cfg, bench)
    cache: dict[float, TransformParams] = {}
    alphas = periodic_alpha(cfg.params)
    for epoch in range(1, cfg.epochs + 1):
        alpha = next(alphas)
        params = cache.get(alpha)
        if params is None:
            params = cache[alpha] = cfg.params.with_alpha(alpha)
        for name in cfg.operator_order:
            search.apply(name, params)
        search.record(epoch)
    return search.result()


def run(cfg: RunConfig, bench: Benchmark) -> RunResult:
    """Dispatch on the configured variant."""
    if cfg.variant is StaVariant.ORIGINAL:
        return run_original(cfg, bench)
    return run_new(cfg, bench)
