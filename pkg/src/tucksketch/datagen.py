"""Generators for the experiment tensor families and the two noise models."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import reduce
from math import ceil

import numpy as np

from .rng import RngStream

__all__ = [
    "SparseGenConfig",
    "hilbert_tensor",
    "sparse_lowrank_tensor",
    "term_weights",
    "sparse_factor_vectors",
    "outer_sum_3",
    "gaussian_tensor",
    "add_scaled_noise",
    "add_awgn",
]


@dataclass(frozen=True)
class SparseGenConfig:
    """Cubic n x n x n tensor built from weighted sparse rank-1 terms.

    The first leading_terms terms carry weight gamma / i^2, the remaining
    ones 1 / i^2; gamma controls the strength of the spectral gap between
    the two groups. Each factor vector gets ceil(density * n) nonzeros at
    uniformly drawn distinct positions with uniform(0, 1) values.
    """

    n: int
    gamma: float
    density: float = 0.05
    leading_terms: int = 10
    total_terms: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("side length must be positive")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if not 0 < self.density <= 1:
            raise ValueError("density must lie in (0, 1]")
        if not 1 <= self.leading_terms <= self.total_terms:
            raise ValueError("need 1 <= leading_terms <= total_terms")


def hilbert_tensor(dims) -> np.ndarray:
    """Entry (i_1, ..., i_N) is 1 / (i_1 + ... + i_N) with 1-based indices."""
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0 or any(d < 1 for d in dims):
        raise ValueError("dims must be a nonempty tuple of positive integers")
    grids = np.ix_(*(np.arange(1, d + 1, dtype=np.float64) for d in dims))
    return 1.0 / reduce(np.add, grids)


def term_weights(cfg: SparseGenConfig) -> np.ndarray:
    """Per-term weights: gamma / i^2 for the leading group, 1 / i^2 after."""
    i = np.arange(1, cfg.total_terms + 1, dtype=np.float64)
    w = 1.0 / i**2
    w[: cfg.leading_terms] *= cfg.gamma
    return w


def sparse_factor_vectors(cfg: SparseGenConfig, rng: RngStream) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Three (total_terms, n) stacks of sparse factor vectors, drawn in term order."""
    nnz = ceil(cfg.density * cfg.n)
    stacks = tuple(np.zeros((cfg.total_terms, cfg.n)) for _ in range(3))
    for t in range(cfg.total_terms):
        for stack in stacks:
            positions = rng.index_sample(cfg.n, nnz)
            stack[t, positions] = rng.uniform(nnz)
    return stacks


def outer_sum_3(weights: np.ndarray, xs: np.ndarray, ys: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """Weighted sum of three-way outer products: sum_t w_t x_t o y_t o z_t."""
    return np.einsum("ti,tj,tk->ijk", weights[:, None] * xs, ys, zs, optimize=True)


def sparse_lowrank_tensor(cfg: SparseGenConfig, rng: RngStream | None = None) -> np.ndarray:
    """Dense n x n x n tensor from cfg's weighted sparse rank-1 terms."""
    rng = rng if rng is not None else RngStream(cfg.seed)
    xs, ys, zs = sparse_factor_vectors(cfg, rng)
    return outer_sum_3(term_weights(cfg), xs, ys, zs)


def gaussian_tensor(dims, rng: RngStream) -> np.ndarray:
    """Tensor of i.i.d. N(0, 1) entries, filled first-index-fastest."""
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0 or any(d < 1 for d in dims):
        raise ValueError("dims must be a nonempty tuple of positive integers")
    count = int(np.prod(dims, dtype=np.int64))
    return rng.normal(count).reshape(dims, order="F")


def add_scaled_noise(x: np.ndarray, delta: float, rng: RngStream) -> np.ndarray:
    """x plus delta times a standard Gaussian tensor; delta = 0 draws nothing."""
    if delta < 0:
        raise ValueError("noise scale must be nonnegative")
    if delta == 0.0:
        return x.copy()
    return x + delta * gaussian_tensor(x.shape, rng)


_SNR_CAP_DB = 300.0


def add_awgn(x: np.ndarray, snr_db: float, rng: RngStream) -> np.ndarray:
    """White Gaussian noise at the requested signal-to-noise ratio (dB).

    Signal power is measured as the mean squared entry. A zero tensor has no
    measurable signal, so it is returned unchanged with a warning.
    """
    power = float(np.mean(np.square(x)))
    if power == 0.0:
        warnings.warn("zero signal: returning the input unchanged", RuntimeWarning)
        return x.copy()
    snr_db = min(float(snr_db), _SNR_CAP_DB)
    sigma = np.sqrt(power / 10.0 ** (snr_db / 10.0))
    return x + sigma * gaussian_tensor(x.shape, rng)
