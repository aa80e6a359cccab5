"""Shared configuration for the Tucker approximation pipelines."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

__all__ = ["ApproxConfig"]


@dataclass(frozen=True)
class ApproxConfig:
    """Parameters shared by all pipelines.

    target_ranks      per-mode target ranks r_n, 1 <= r_n <= I_n
    processing_order  1-based permutation of the modes; natural order if None
    oversample        extra Gaussian columns for the randomized SVD pipeline
    sketch_sizes      per-mode sketch sizes l_n (> r_n); defaults to r_n + 2
    power_iters       subspace power iterations for the sub-sketch pipeline
    seed              stream seed used when no explicit RngStream is supplied
    """

    target_ranks: tuple[int, ...]
    processing_order: tuple[int, ...] | None = None
    oversample: int = 5
    sketch_sizes: tuple[int, ...] | None = None
    power_iters: int = 1
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "target_ranks", tuple(int(r) for r in self.target_ranks))
        if len(self.target_ranks) == 0 or any(r < 1 for r in self.target_ranks):
            raise ValueError("target ranks must be a nonempty tuple of positive integers")
        if self.processing_order is not None:
            order = tuple(int(i) for i in self.processing_order)
            object.__setattr__(self, "processing_order", order)
            if sorted(order) != list(range(1, len(order) + 1)):
                raise ValueError(f"processing order {order} is not a permutation of 1..N")
        if self.oversample < 0:
            raise ValueError("oversampling must be nonnegative")
        if self.power_iters < 1:
            raise ValueError("power iteration count must be at least 1")
        if self.sketch_sizes is not None:
            sizes = tuple(int(l) for l in self.sketch_sizes)
            object.__setattr__(self, "sketch_sizes", sizes)
            if len(sizes) != len(self.target_ranks):
                raise ValueError("sketch_sizes must match target_ranks in length")
            for r, l in zip(self.target_ranks, sizes):
                if l <= r:
                    raise ValueError(f"sketch size {l} must exceed target rank {r}")
                if l == r + 1:
                    warnings.warn(
                        f"sketch size {l} = rank + 1 makes the expected-error "
                        "bound vacuous",
                        RuntimeWarning,
                    )

    def ranks_for(self, ndim: int) -> tuple[int, ...]:
        if len(self.target_ranks) != ndim:
            raise ValueError(
                f"{len(self.target_ranks)} target ranks given for an order-{ndim} tensor"
            )
        return self.target_ranks

    def order_for(self, ndim: int) -> tuple[int, ...]:
        if self.processing_order is None:
            return tuple(range(1, ndim + 1))
        if len(self.processing_order) != ndim:
            raise ValueError(
                f"processing order {self.processing_order} does not cover {ndim} modes"
            )
        return self.processing_order

    def sketch_sizes_for(self, ndim: int) -> tuple[int, ...]:
        ranks = self.ranks_for(ndim)
        if self.sketch_sizes is None:
            return tuple(r + 2 for r in ranks)
        return self.sketch_sizes
