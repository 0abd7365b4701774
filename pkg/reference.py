"""
Published results for the benchmark suite.

Best / Average values reported for the STA variants and for the random
search methods they were compared with (HRO, ARSET, DARSET, RSW). Only the
STA rows carry pass/fail semantics; the other algorithms are shown for
context and are not implemented here.

Group one tables report a best point and value only; group two reports
Best and Average over 10 independent runs.
"""

from dataclasses import dataclass
from typing import Literal

STA_ORIGINAL = "STA(original)"
STA_NEW = "STA(new)"

VARIANT_ALGORITHM = {"original": STA_ORIGINAL, "new": STA_NEW}


@dataclass(frozen=True)
class ReferenceRow:
    """One published result line."""
    function: str
    algorithm: str
    best: float
    average: float | None = None
    best_x: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Acceptance:
    """Pass rule for a measured Best value.

    mode "abs": |measured - target| <= tolerance
    mode "max": measured <= target
    """
    target: float
    tolerance: float = 0.0
    mode: Literal["abs", "max"] = "abs"

    def passes(self, measured: float) -> bool:
        if measured != measured:  # NaN
            return False
        if self.mode == "max":
            return measured <= self.target
        return abs(measured - self.target) <= self.tolerance


def _one(function: str, rows: list[tuple[str, tuple[float, ...], float]]) -> list[ReferenceRow]:
    return [ReferenceRow(function, algo, best, None, x) for algo, x, best in rows]


def _two(function: str, values: list[float]) -> list[ReferenceRow]:
    algos = ("DARSET", "RSW", STA_ORIGINAL, STA_NEW)
    return [
        ReferenceRow(function, algo, values[2 * i], values[2 * i + 1])
        for i, algo in enumerate(algos)
    ]


# Group one: best x and best f per algorithm
REFERENCE_ROWS: list[ReferenceRow] = [
    *_one("f1", [
        ("HRO", (3.000324,), -3.0),
        ("ARSET", (3.0,), -3.0),
        ("RSW", (3.0,), -3.0),
        (STA_ORIGINAL, (3.0,), -3.0),
        (STA_NEW, (3.0,), -3.0),
    ]),
    *_one("f2", [
        ("HRO", (2.4000e-005,), 2.8595e-019),
        ("ARSET", (-2.53e-011,), 2.21e-043),
        ("RSW", (8.17e-82,), 0.0),
        (STA_ORIGINAL, (2.0447e-082,), 0.0),
        (STA_NEW, (3.5197e-084,), 0.0),
    ]),
    *_one("f3", [
        ("ARSET", (3.0015, 3.0), 5.04e-023),
        ("RSW", (2.9996, 3.0), 3.43e-28),
        (STA_ORIGINAL, (3.0, 3.0), 5.8715e-033),
        (STA_NEW, (3.0, 3.0), 1.0335e-035),
    ]),
    *_one("f4", [
        ("ARSET", (1.0, 1.0), 4.02e-016),
        ("RSW", (1.0, 1.0), 1.97e-31),
        (STA_ORIGINAL, (1.0, 1.0), 8.2040e-012),
        (STA_NEW, (1.0, 1.0), 3.7678e-012),
    ]),
    *_one("f5", [
        ("ARSET", (-10.0, 6.67e-008), -10.0),
        ("RSW", (-9.9996, -6.57e-17), -9.9996),
        (STA_ORIGINAL, (-10.0, 0.0), -10.0),
        (STA_NEW, (-10.0, 0.0), -10.0),
    ]),
    # Group two: (best, average) for DARSET, RSW, STA(original), STA(new)
    *_two("g1", [0.0, 9.10e-016, 0.0, 0.0, 0.0, 5.3147e-012, 0.0, 0.0]),
    *_two("g2", [-16.0917, -16.0917, -16.0917, -15.7399, -16.0917, -16.0917, -16.0917, -16.0917]),
    *_two("g3", [0.998, 1.5885, 0.998, 6.3728, 0.9980, 3.9354, 0.9980, 0.9980]),
    *_two("g4", [0.3979] * 8),
    *_two("g5", [-1.0316] * 8),
    *_two("g6", [3.0] * 8),
    *_two("g7", [-186.7309] * 8),
    *_two("g8", [8.0128] * 8),
    *_two("g9", [3.72e-12, 9.30e-06, 1.28e-28, 2.15e-28, 2.8718e-010, 1.1802e-009, 8.3086e-011, 1.1344e-009]),
    *_two("g10", [2.45e-16, 4.02e-15, 0.0, 0.0, 0.0, 0.0, 4.9783e-094, 2.7247e-084]),
    *_two("g11", [5.93e-12, 26.227, 2.36e-32, 3.3927, 7.2021e-011, 1.0417, 2.6223e-011, 3.8022e-011]),
    *_two("g12", [3.91e-15, 4.28e-14, 2.84e-29, 6.07e-28, 8.9683e-014, 3.8771e-012, 9.5239e-014, 9.9002e-012]),
    *_two("g13", [1.0, 1.0077, 1.0091, 1.0091, 1.0000, 1.0375, 1.0000, 1.0225]),
    *_two("g14", [1.7442] * 8),
    *_two("g15", [8.17e-09, 1.68e-07, 1.02e-11, 1.71e-11, 2.1942e-014, 6.4995e-009, 9.9870e-014, 1.0542e-007]),
]

# Pass rules for the measured Best of either STA variant.
# Tail magnitudes such as 1e-84 depend on the random stream, so residual
# problems only require the global basin at high precision.
ACCEPTANCE: dict[str, Acceptance] = {
    "f1": Acceptance(-3.0, 1e-6),
    "f2": Acceptance(1e-20, mode="max"),
    "f3": Acceptance(1e-15, mode="max"),
    "f4": Acceptance(1e-8, mode="max"),
    "f5": Acceptance(-10.0, 1e-6),
    "g1": Acceptance(0.0, 1e-3),
    "g2": Acceptance(-16.0917, 1e-3),
    "g3": Acceptance(0.9980, 1e-3),
    "g4": Acceptance(0.3979, 1e-3),
    "g5": Acceptance(-1.0316, 1e-3),
    "g6": Acceptance(3.0, 1e-3),
    "g7": Acceptance(-186.7309, 1e-2),
    "g8": Acceptance(8.0128, 1e-2),
    "g9": Acceptance(1e-6, mode="max"),
    "g10": Acceptance(1e-12, mode="max"),
    "g11": Acceptance(1e-6, mode="max"),
    "g12": Acceptance(1e-8, mode="max"),
    "g13": Acceptance(1.0, 1e-3),
    "g14": Acceptance(1.7442, 1e-3),
    "g15": Acceptance(1e-8, mode="max"),
}


def reference_rows(function: str) -> list[ReferenceRow]:
    """All published rows for one benchmark, in table order."""
    return [row for row in REFERENCE_ROWS if row.function == function]


def get_reference(function: str, variant: str) -> ReferenceRow | None:
    """Published STA row for a benchmark and variant ("original" / "new")."""
    algorithm = VARIANT_ALGORITHM.get(getattr(variant, "value", variant))
    for row in REFERENCE_ROWS:
        if row.function == function and row.algorithm == algorithm:
            return row
    return None
