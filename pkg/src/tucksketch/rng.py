"""Counter-based random streams with explicit, platform-independent draws.

All randomness in the package flows through RngStream. The stream is keyed by
(seed, stream id) and backed by the Philox counter-based generator; uniforms
are derived directly from the raw 64-bit output and normals via Box-Muller,
so a given key always produces the same sequence of draws, bit for bit.
"""

from __future__ import annotations

import numpy as np

__all__ = ["RngStream", "gaussian_matrix"]

_MASK64 = (1 << 64) - 1


class RngStream:
    """Deterministic random stream identified by (seed, stream)."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed) & _MASK64
        self.stream = int(stream) & _MASK64
        # SeedSequence hashes (seed, stream) with a fixed, platform-stable
        # algorithm; providing entropy explicitly avoids any OS randomness.
        self._bits = np.random.Philox(
            seed=np.random.SeedSequence(entropy=(self.seed, self.stream))
        )

    def substream(self, stream: int) -> "RngStream":
        """Fresh independent stream under the same seed."""
        return RngStream(self.seed, stream)

    def uniform(self, n: int) -> np.ndarray:
        """n doubles, i.i.d. uniform on the open interval (0, 1)."""
        raw = self._bits.random_raw(int(n))
        return ((raw >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0**-52

    def normal(self, rows: int, cols: int | None = None) -> np.ndarray:
        """Standard normal draws via Box-Muller.

        Returns a vector of length rows when cols is None, otherwise a
        (rows, cols) matrix filled first-index-fastest.
        """
        count = int(rows) if cols is None else int(rows) * int(cols)
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log(u[:pairs]))
        angle = (2.0 * np.pi) * u[pairs:]
        z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:count]
        if cols is None:
            return z
        return z.reshape((rows, cols), order="F")

    def index_sample(self, n: int, k: int) -> np.ndarray:
        """k distinct indices drawn uniformly from range(n), partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} distinct indices from range({n})")
        u = self.uniform(k)
        idx = np.arange(n)
        for t in range(k):
            j = t + int(u[t] * (n - t))
            idx[t], idx[j] = idx[j], idx[t]
        return idx[:k].copy()


def gaussian_matrix(rng: RngStream, rows: int, cols: int) -> np.ndarray:
    """(rows, cols) matrix of i.i.d. N(0, 1) entries drawn from rng."""
    if rows < 1 or cols < 1:
        raise ValueError("matrix dimensions must be positive")
    return rng.normal(rows, cols)
