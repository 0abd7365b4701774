"""
State transformation operators.

Each operator maps the incumbent state to SE candidate states:

    rotation     c = x + alpha / (n * |x|) * R_r x         R_r: n x n, uniform [-1, 1]
    translation  c = x + beta * R_t * (x - x_prev) / |x - x_prev|    R_t: uniform [0, 1]
    expansion    c = x + gamma * R_e x                     R_e: diagonal, standard normal
    axesion      c = x + delta * R_a x                     R_a: one random diagonal entry, standard normal

Random matrices are drawn fresh for every candidate. Candidates are generated
as one (SE, n) array per call.
"""

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from errors import ConfigError, DegenerateDirection, DegenerateState
from rng import RandomSource

logger = logging.getLogger(__name__)

# Published parameters ("alpha 1 -> 1e-4", SE 32, fc 4 original / 2 new)
DEFAULT_ALPHA_MAX = 1.0
DEFAULT_ALPHA_MIN = 1e-4
DEFAULT_SE = 32
DEFAULT_FC_ORIGINAL = 4.0
DEFAULT_FC_NEW = 2.0


@dataclass(frozen=True, eq=False)
class State:
    """A candidate solution: decision vector plus cached objective value."""
    x: np.ndarray
    f: float | None = None

    def __post_init__(self):
        x = np.array(self.x, dtype=float).reshape(-1)
        if x.size < 1:
            raise ConfigError("a state needs at least one component")
        if not np.all(np.isfinite(x)):
            raise ConfigError(f"state components must be finite, got {x.tolist()}")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        if self.f is not None:
            object.__setattr__(self, "f", float(self.f))

    @property
    def dim(self) -> int:
        return self.x.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.x))

    def same_point(self, other: "State") -> bool:
        return bool(np.array_equal(self.x, other.x))

    def __repr__(self) -> str:
        return f"State(x={self.x.tolist()}, f={self.f})"


@dataclass(frozen=True)
class TransformParams:
    """Tunable constants of the operators and of the alpha schedule."""
    alpha: float = DEFAULT_ALPHA_MAX
    alpha_max: float = DEFAULT_ALPHA_MAX
    alpha_min: float = DEFAULT_ALPHA_MIN
    beta: float = 1.0
    gamma: float = 1.0
    delta: float = 1.0
    se: int = DEFAULT_SE
    fc: float = DEFAULT_FC_NEW

    def __post_init__(self):
        bad = []
        for name in ("alpha", "beta", "gamma", "delta"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                bad.append(name)
        if not (math.isfinite(self.alpha_min) and self.alpha_min > 0):
            bad.append("alpha_min")
        if not (math.isfinite(self.alpha_max) and self.alpha_max >= self.alpha_min):
            bad.append("alpha_max")
        # alpha may sit below alpha_min only as an explicit zero radius
        if self.alpha > self.alpha_max:
            bad.append("alpha")
        if not isinstance(self.se, (int, np.integer)) or self.se < 1:
            bad.append("se")
        if not (math.isfinite(self.fc) and self.fc > 1):
            bad.append("fc")
        if bad:
            raise ConfigError(f"invalid transform parameters: {', '.join(sorted(set(bad)))}", sorted(set(bad)))

    @classmethod
    def for_variant(cls, variant, **overrides) -> "TransformParams":
        """Published defaults for a variant ("original"/"new" or StaVariant)."""
        tag = getattr(variant, "value", variant)
        fc = DEFAULT_FC_ORIGINAL if tag == "original" else DEFAULT_FC_NEW
        values = {"fc": fc, **overrides}
        if "alpha_max" in values and "alpha" not in values:
            values["alpha"] = values["alpha_max"]
        unknown = sorted(set(values) - set(cls.__dataclass_fields__))
        if unknown:
            raise ConfigError(f"unknown transform parameters: {', '.join(unknown)}", unknown)
        return cls(**values)

    def with_alpha(self, alpha: float) -> "TransformParams":
        return replace(self, alpha=alpha)


def alpha_schedule(params: TransformParams) -> list[float]:
    """Alpha values of one coarse-to-fine sweep: alpha_max, alpha_max/fc, ... >= alpha_min."""
    values = []
    alpha = params.alpha_max
    while alpha >= params.alpha_min:
        values.append(alpha)
        alpha = alpha / params.fc
    return values


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """SE candidate points generated from one incumbent."""
    points: np.ndarray  # shape (SE, n)
    origin: State = field(repr=False)

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.origin.dim:
            raise ConfigError(
                f"candidate array shape {points.shape} does not match dimension {self.origin.dim}"
            )
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return self.points.shape[0]

    def clipped(self, lo, hi) -> "CandidateSet":
        return CandidateSet(np.clip(self.points, lo, hi), self.origin)


def best_index(values: np.ndarray) -> int:
    """Index of the smallest value, lowest index on ties. NaN never wins."""
    clean = np.where(np.isnan(values), np.inf, values)
    return int(np.argmin(clean))


def op_rotate(x: State, p: TransformParams, rng: RandomSource) -> CandidateSet:
    """Search inside the hypersphere of radius alpha around x."""
    norm = x.norm
    if norm == 0:
        raise DegenerateState("rotation is undefined at the zero vector")
    n = x.dim
    r = rng.uniform(-1.0, 1.0, size=(p.se, n, n))
    step = np.einsum("kij,j->ki", r, x.x)
    points = x.x + (p.alpha / (n * norm)) * step
    return CandidateSet(points, x)


def op_translate(x: State, x_prev: State, p: TransformParams, rng: RandomSource) -> CandidateSet:
    """Search along the ray from x_prev through x, at most beta beyond x."""
    direction = x.x - x_prev.x
    length = float(np.linalg.norm(direction))
    if length == 0:
        raise DegenerateDirection("translation needs two distinct points")
    t = rng.uniform(0.0, 1.0, size=p.se)
    points = x.x + (p.beta * t)[:, None] * (direction / length)
    return CandidateSet(points, x)


def op_expand(x: State, p: TransformParams, rng: RandomSource) -> CandidateSet:
    """Perturb every coordinate multiplicatively by 1 + gamma * N(0, 1)."""
    g = rng.gaussian(size=(p.se, x.dim))
    points = x.x * (1.0 + p.gamma * g)
    return CandidateSet(points, x)


def op_axesion(x: State, p: TransformParams, rng: RandomSource) -> CandidateSet:
    """Perturb one random coordinate multiplicatively by 1 + delta * N(0, 1).

    Axes are drawn first (SE indices), then the SE gaussian entries.
    A coordinate that is exactly zero cannot move.
    """
    axes = rng.pick_index(x.dim, size=p.se)
    g = rng.gaussian(size=p.se)
    points = np.tile(x.x, (p.se, 1))
    rows = np.arange(p.se)
    points[rows, axes] = x.x[axes] * (1.0 + p.delta * g)
    return CandidateSet(points, x)


def clip_to_bounds(c: State, lo, hi) -> State:
    """Clamp each component into [lo_i, hi_i]; infinite bounds pass through."""
    clipped = np.clip(c.x, lo, hi)
    if np.array_equal(clipped, c.x):
        return c
    return State(clipped)


OPERATORS = {
    "rotate": op_rotate,
    "expand": op_expand,
    "axesion": op_axesion,
}
