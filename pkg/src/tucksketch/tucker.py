"""Tucker approximation pipelines and the Tucker model container.

Five pipelines produce a TuckerModel (core tensor plus per-mode orthonormal
factors):

* thosvd            -- truncated SVD of each unfolding, independently.
* sthosvd           -- sequential truncation; the core shrinks after each
                       mode, so later modes get cheaper.
* r_sthosvd         -- sequential truncation with a randomized SVD per mode.
* sketch_sthosvd    -- sequential truncation with a two-sided sketch per mode.
* sub_sketch_sthosvd-- as above with subspace power iteration.
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass

import numpy as np

from .config import ApproxConfig
from .linalg import rsvd, sketch, sub_sketch, truncated_svd
from .rng import RngStream
from .tensor import as_tensor, fold, mode_n_product, unfold

__all__ = [
    "TuckerModel",
    "ApproxConfig",
    "thosvd",
    "sthosvd",
    "r_sthosvd",
    "sketch_sthosvd",
    "sub_sketch_sthosvd",
    "reconstruct",
    "save_model",
    "load_model",
]


@dataclass
class TuckerModel:
    """Core tensor of shape (r_1, ..., r_N) plus factors of shape (I_n, r_n)."""

    core: np.ndarray
    factors: list[np.ndarray]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(u.shape[0] for u in self.factors)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(self.core.shape)


def reconstruct(model: TuckerModel) -> np.ndarray:
    """Expand the model back to a full tensor of shape (I_1, ..., I_N)."""
    x = model.core
    for n, u in enumerate(model.factors, start=1):
        x = mode_n_product(x, u, n)
    return x


def _validate(x, cfg: ApproxConfig):
    x = as_tensor(x)
    ranks = cfg.ranks_for(x.ndim)
    for r, d in zip(ranks, x.shape):
        if not 1 <= r <= d:
            raise ValueError(f"target rank {r} out of range for dimension {d}")
    order = cfg.order_for(x.ndim)
    return x, ranks, order


def _shrunk(dims: tuple[int, ...], mode: int, r: int) -> tuple[int, ...]:
    return dims[: mode - 1] + (r,) + dims[mode:]


def thosvd(x: np.ndarray, cfg: ApproxConfig) -> TuckerModel:
    """Factor each mode from the truncated SVD of the original unfolding."""
    x, ranks, _ = _validate(x, cfg)
    factors = [truncated_svd(unfold(x, n), ranks[n - 1]).u for n in range(1, x.ndim + 1)]
    core = x
    for n, u in enumerate(factors, start=1):
        core = mode_n_product(core, u.T, n)
    return TuckerModel(core, factors)


def sthosvd(x: np.ndarray, cfg: ApproxConfig) -> TuckerModel:
    """Sequentially truncated pipeline; the core shrinks after each mode."""
    x, ranks, order = _validate(x, cfg)
    core = x
    factors: list[np.ndarray | None] = [None] * x.ndim
    for n in order:
        r = ranks[n - 1]
        t = truncated_svd(unfold(core, n), r)
        factors[n - 1] = t.u
        core = fold(t.s[:, None] * t.v.T, n, _shrunk(core.shape, n, r))
    return TuckerModel(core, factors)


def r_sthosvd(x: np.ndarray, cfg: ApproxConfig, rng: RngStream | None = None) -> TuckerModel:
    """Sequential truncation with a randomized SVD per mode.

    The oversampling is clamped so that rank + oversampling never exceeds
    the smaller unfolding dimension; a mode whose rank already reaches that
    size falls back to the deterministic truncated SVD.
    """
    x, ranks, order = _validate(x, cfg)
    rng = rng if rng is not None else RngStream(cfg.seed)
    core = x
    factors: list[np.ndarray | None] = [None] * x.ndim
    for n in order:
        r = ranks[n - 1]
        m = unfold(core, n)
        p = min(cfg.oversample, min(m.shape) - r)
        t = rsvd(m, r, p, rng) if p >= 0 else truncated_svd(m, r)
        factors[n - 1] = t.u
        core = fold(t.s[:, None] * t.v.T, n, _shrunk(core.shape, n, r))
    return TuckerModel(core, factors)


def _sketch_pipeline(x, cfg: ApproxConfig, rng: RngStream | None, power_iters: int) -> TuckerModel:
    x, ranks, order = _validate(x, cfg)
    sizes = cfg.sketch_sizes_for(x.ndim)
    rng = rng if rng is not None else RngStream(cfg.seed)
    core = x
    factors: list[np.ndarray | None] = [None] * x.ndim
    for n in order:
        r = ranks[n - 1]
        m = unfold(core, n)
        rows, cols = m.shape
        l = min(sizes[n - 1], rows)
        if r >= rows or r > cols or l <= r:
            # Full-rank or otherwise unsketchable mode: l_n > r_n cannot hold
            # within the unfolding's shape, so truncate deterministically.
            t = truncated_svd(m, r)
            factors[n - 1] = t.u
            core = fold(t.s[:, None] * t.v.T, n, _shrunk(core.shape, n, r))
            continue
        if l == r + 1:
            warnings.warn(
                f"mode {n}: sketch size clamped to rank + 1; expected-error "
                "bound is vacuous for this mode",
                RuntimeWarning,
            )
        result = (
            sketch(m, r, l, rng)
            if power_iters == 0
            else sub_sketch(m, r, l, power_iters, rng)
        )
        factors[n - 1] = result.q
        core = fold(result.xc, n, _shrunk(core.shape, n, r))
    return TuckerModel(core, factors)


def sketch_sthosvd(x: np.ndarray, cfg: ApproxConfig, rng: RngStream | None = None) -> TuckerModel:
    """Sequential truncation with a two-sided sketch per mode."""
    return _sketch_pipeline(x, cfg, rng, 0)


def sub_sketch_sthosvd(x: np.ndarray, cfg: ApproxConfig, rng: RngStream | None = None) -> TuckerModel:
    """Sequential truncation with a power-iterated two-sided sketch per mode."""
    return _sketch_pipeline(x, cfg, rng, cfg.power_iters)


_MAGIC = b"TUCK"
_VERSION = 1


def save_model(model: TuckerModel, path) -> None:
    """Write the model as a flat little-endian binary container.

    Layout: magic "TUCK", version u32, N u32, dims and ranks as u64, then the
    core followed by each factor as float64, all column-major.
    """
    dims, ranks = model.dims, model.ranks
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<II", _VERSION, len(dims)))
        f.write(np.asarray(dims, dtype="<u8").tobytes())
        f.write(np.asarray(ranks, dtype="<u8").tobytes())
        f.write(np.asarray(model.core.ravel(order="F"), dtype="<f8").tobytes())
        for u in model.factors:
            f.write(np.asarray(u.ravel(order="F"), dtype="<f8").tobytes())


def load_model(path) -> TuckerModel:
    """Read a model written by save_model."""
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:4] != _MAGIC:
        raise ValueError("not a Tucker model container (bad magic)")
    version, ndim = struct.unpack_from("<II", blob, 4)
    if version != _VERSION:
        raise ValueError(f"unsupported container version {version}")
    offset = 12
    dims = np.frombuffer(blob, dtype="<u8", count=ndim, offset=offset).astype(int)
    offset += 8 * ndim
    ranks = np.frombuffer(blob, dtype="<u8", count=ndim, offset=offset).astype(int)
    offset += 8 * ndim

    def take(count, shape):
        nonlocal offset
        flat = np.frombuffer(blob, dtype="<f8", count=count, offset=offset)
        offset += 8 * count
        return flat.reshape(shape, order="F").astype(np.float64)

    core = take(int(np.prod(ranks)), tuple(ranks))
    factors = [take(int(d * r), (int(d), int(r))) for d, r in zip(dims, ranks)]
    if offset != len(blob):
        raise ValueError("container has trailing bytes")
    return TuckerModel(core, factors)
