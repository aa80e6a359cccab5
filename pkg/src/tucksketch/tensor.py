"""Dense N-dimensional tensor primitives: unfolding, folding, mode products.

Tensors are plain float64 ndarrays. Mode indices are 1-based throughout the
public API. The mode-n unfolding places entry (i_1, ..., i_N) at row i_n and
column 1 + sum_{k != n} (i_k - 1) * prod_{m < k, m != n} I_m (1-based), i.e.
the remaining indices vary first-index-fastest.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_tensor",
    "unfold",
    "fold",
    "mode_n_product",
    "frobenius_norm",
    "kronecker",
]


def as_tensor(data) -> np.ndarray:
    """Coerce to a float64 tensor of order >= 1 and validate its entries."""
    x = np.asarray(data, dtype=np.float64)
    if x.ndim == 0:
        x = x.reshape(1)
    if any(d < 1 for d in x.shape):
        raise ValueError(f"tensor dimensions must all be positive, got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("tensor entries must be finite")
    return x


def _check_mode(mode: int, ndim: int) -> None:
    if not 1 <= mode <= ndim:
        raise ValueError(f"mode {mode} out of range for an order-{ndim} tensor")


def unfold(x: np.ndarray, mode: int) -> np.ndarray:
    """Mode-n matricization of x, shape (I_n, prod of the other dims)."""
    _check_mode(mode, x.ndim)
    return np.moveaxis(x, mode - 1, 0).reshape((x.shape[mode - 1], -1), order="F")


def fold(m: np.ndarray, mode: int, dims) -> np.ndarray:
    """Inverse of unfold: rebuild the tensor of shape dims from its mode-n unfolding."""
    dims = tuple(int(d) for d in dims)
    _check_mode(mode, len(dims))
    rest = dims[: mode - 1] + dims[mode:]
    expected = (dims[mode - 1], int(np.prod(rest, dtype=np.int64)))
    if tuple(m.shape) != expected:
        raise ValueError(
            f"matrix of shape {m.shape} is not a mode-{mode} unfolding of dims {dims}"
        )
    return np.moveaxis(m.reshape((dims[mode - 1],) + rest, order="F"), 0, mode - 1)


def mode_n_product(x: np.ndarray, a: np.ndarray, mode: int) -> np.ndarray:
    """Contract mode n of x against the columns of a; I_n becomes a.shape[0].

    Computed as fold(a @ unfold(x, n)) so the matrix route and the tensor
    route are the same route.
    """
    _check_mode(mode, x.ndim)
    if a.ndim != 2 or a.shape[1] != x.shape[mode - 1]:
        raise ValueError(
            f"matrix of shape {a.shape} cannot contract mode {mode} of size "
            f"{x.shape[mode - 1]}"
        )
    new_dims = x.shape[: mode - 1] + (a.shape[0],) + x.shape[mode:]
    return fold(a @ unfold(x, mode), mode, new_dims)


def frobenius_norm(x: np.ndarray) -> float:
    """Square root of the sum of squared entries.

    The squares are summed in sorted order, so the result is bit-identical
    under any rearrangement of the entries (unfoldings in particular).
    """
    sq = np.square(np.ravel(x))
    sq.sort()
    return float(np.sqrt(np.sum(sq)))


def kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product: block (i, j) of the result is a[i, j] * b."""
    return np.kron(a, b)
