"""
Seedable randomness for the State Transition Algorithm.

All draws come from numpy's PCG64 bit generator (O'Neill's permuted
congruential generator, 128-bit state, 64-bit output). Gaussian draws use
numpy's ziggurat sampler on top of it. Both are fixed algorithms, so a seed
fully determines every trace regardless of platform.

A RandomSource is single-owner. Parallel runs each build their own from
`derive_seed(master_seed, run_index)`.
"""

import numpy as np

from errors import InvalidRange

SEED_MASK = (1 << 64) - 1

# splitmix64 constants: golden-ratio increment and finalizer multipliers
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
SPLITMIX_MUL2 = 0x94D049BB133111EB


def splitmix64_mix(z: int) -> int:
    """splitmix64 output finalizer, a bijection on 64-bit integers."""
    z &= SEED_MASK
    z = ((z ^ (z >> 30)) * SPLITMIX_MUL1) & SEED_MASK
    z = ((z ^ (z >> 27)) * SPLITMIX_MUL2) & SEED_MASK
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Mix a master seed with a run index into a 64-bit run seed.

    run_seed = splitmix64_mix(master_seed + SPLITMIX_GAMMA * (index + 1) mod 2^64).
    The step is injective in the index for index < 2^64 (the increment is odd)
    and the finalizer is a bijection, so distinct runs never share a seed.
    """
    return splitmix64_mix(int(master_seed) + SPLITMIX_GAMMA * (int(index) + 1))


class RandomSource:
    """Deterministic draw stream built from a 64-bit seed."""

    def __init__(self, seed: int):
        self.seed = int(seed) & SEED_MASK
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"

    def uniform(self, lo: float = 0.0, hi: float = 1.0, size=None):
        """Uniform draw(s) in [lo, hi]. Array-valued bounds broadcast."""
        lo_arr = np.asarray(lo, dtype=float)
        hi_arr = np.asarray(hi, dtype=float)
        if np.any(lo_arr > hi_arr):
            raise InvalidRange(f"uniform bounds reversed: lo={lo}, hi={hi}")
        value = self._gen.uniform(lo_arr, hi_arr, size=size)
        if size is None and np.ndim(value) == 0:
            return float(value)
        return value

    def gaussian(self, size=None):
        """Standard-normal draw(s)."""
        value = self._gen.standard_normal(size=size)
        if size is None:
            return float(value)
        return value

    def pick_index(self, n: int, size=None):
        """Uniform index draw(s) from {0, ..., n-1}."""
        if n < 1:
            raise InvalidRange(f"cannot pick an index from an empty range (n={n})")
        value = self._gen.integers(0, n, size=size)
        if size is None:
            return int(value)
        return value
