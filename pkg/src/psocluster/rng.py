"""Seeded random streams.

Every stochastic step in the package draws from an :class:`RngStream`.
The stream is a PCG64 bit generator keyed by a 64-bit seed and a small
integer stream key, so PSO and K-Means can share one user seed without
sharing draws.
"""

import numpy as np

PSO_STREAM = 0
KMEANS_STREAM = 1


class RngStream:
    """Reproducible U(0, 1) and integer draws.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.
    key : int, default=0
        Sub-stream selector; different keys give independent sequences.
    """

    def __init__(self, seed: int, key: int = PSO_STREAM):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.key = int(key)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(self.key,)))
        )
        self.draws = 0

    def uniform(self, shape=None):
        """Samples from U(0, 1), filled in C (row-major) order."""
        out = self._gen.random(shape)
        self.draws += int(np.prod(shape)) if shape is not None else 1
        return out

    def randbelow(self, n: int) -> int:
        """One integer uniformly from ``[0, n)``."""
        if n < 1:
            raise ValueError("n must be positive")
        self.draws += 1
        return int(self._gen.integers(n))

    def sample(self, n: int, k: int) -> np.ndarray:
        """``k`` distinct integers from ``[0, n)`` in draw order (partial Fisher-Yates)."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} distinct values from {n}")
        pool = np.arange(n)
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k].copy()

    def state(self) -> dict:
        return self._gen.bit_generator.state

    def copy(self) -> "RngStream":
        """Independent stream positioned at the same point in the sequence."""
        clone = RngStream.__new__(RngStream)
        clone.seed, clone.key, clone.draws = self.seed, self.key, self.draws
        bitgen = np.random.PCG64()
        bitgen.state = self._gen.bit_generator.state
        clone._gen = np.random.Generator(bitgen)
        return clone

    def __repr__(self):
        return f"RngStream(seed={self.seed}, key={self.key}, draws={self.draws})"
