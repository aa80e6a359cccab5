"""Matrix kernels: thin QR/SVD, truncated SVD, and randomized low-rank schemes.

The deterministic factorizations are thin wrappers over LAPACK. The
randomized ones are the interesting part:

* rsvd          -- range finder (A @ Gaussian), then SVD of the projection.
* sketch        -- two-sided sketch: a column sketch Y = A @ Omega and a row
                   sketch W = Psi @ A, combined as Q @ lstsq(Psi @ Q, W).
* sub_sketch    -- same, but the basis Q is sharpened by alternating
                   applications of A and A.T with re-orthonormalization in
                   between (subspace power iteration).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .rng import RngStream, gaussian_matrix

__all__ = [
    "SvdTriple",
    "SketchResult",
    "thin_qr",
    "orthonormalize",
    "thin_svd",
    "truncated_svd",
    "rsvd",
    "sketch",
    "sub_sketch",
]


@dataclass
class SvdTriple:
    """Factorization A ~= u @ diag(s) @ v.T with orthonormal u, v columns."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    def matrix(self) -> np.ndarray:
        return (self.u * self.s) @ self.v.T


@dataclass
class SketchResult:
    """Rank-k approximation q @ xc with q orthonormal and xc the correction."""

    q: np.ndarray
    xc: np.ndarray

    def matrix(self) -> np.ndarray:
        return self.q @ self.xc


def thin_qr(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Economy-size QR: a = q @ r with q of shape (m, min(m, n))."""
    return np.linalg.qr(a, mode="reduced")


def orthonormalize(a: np.ndarray) -> np.ndarray:
    """Orthonormal basis of range(a); a zero matrix yields an (m, 0) result."""
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return u[:, :0]
    tol = max(a.shape) * np.finfo(np.float64).eps * s[0]
    rank = int(np.count_nonzero(s > tol))
    return u[:, :rank]


def thin_svd(a: np.ndarray) -> SvdTriple:
    """All min(m, n) singular triplets of a."""
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return SvdTriple(u, s, vt.T)


def _complete_basis(q: np.ndarray, extra: int) -> np.ndarray:
    """Append extra orthonormal columns orthogonal to range(q)."""
    m, k = q.shape
    if extra == 0:
        return q
    if k + extra > m:
        raise ValueError("cannot extend basis beyond the ambient dimension")
    full = np.linalg.qr(q, mode="complete")[0]
    return np.hstack([q, full[:, k : k + extra]])


def truncated_svd(a: np.ndarray, r: int) -> SvdTriple:
    """Leading r singular triplets of a.

    When r exceeds min(m, n) the spectrum is padded with zeros, u gains an
    orthonormal completion, and v gains zero columns (an orthonormal
    completion of v does not exist once r exceeds the column count; the
    padded columns only ever multiply zero singular values).
    """
    m, n = a.shape
    if r < 1:
        raise ValueError("rank must be at least 1")
    if r > m:
        raise ValueError(f"rank {r} exceeds the row count {m}")
    full = thin_svd(a)
    k = min(m, n)
    if r <= k:
        return SvdTriple(full.u[:, :r].copy(), full.s[:r].copy(), full.v[:, :r].copy())
    extra = r - k
    u = _complete_basis(full.u, extra)
    s = np.concatenate([full.s, np.zeros(extra)])
    v = np.hstack([full.v, np.zeros((n, extra))])
    return SvdTriple(u, s, v)


def rsvd(a: np.ndarray, r: int, p: int, rng: RngStream) -> SvdTriple:
    """Randomized rank-r SVD with oversampling p.

    Projects a onto the range of a @ Omega for a Gaussian Omega with r + p
    columns, then takes the SVD of the small projected matrix.
    """
    m, n = a.shape
    if r < 1:
        raise ValueError("rank must be at least 1")
    if p < 0:
        raise ValueError("oversampling must be nonnegative")
    if r + p > min(m, n):
        raise ValueError(
            f"rank {r} plus oversampling {p} exceeds min(m, n) = {min(m, n)}"
        )
    omega = gaussian_matrix(rng, n, r + p)
    q, _ = thin_qr(a @ omega)
    b = q.T @ a
    inner = thin_svd(b)
    return SvdTriple(q @ inner.u[:, :r], inner.s[:r].copy(), inner.v[:, :r].copy())


def _check_sketch_params(m: int, n: int, k: int, l: int) -> None:
    if k < 1 or l < 1:
        raise ValueError("sketch sizes must be positive")
    if k > min(l, n):
        raise ValueError(f"sketch size k={k} must satisfy k <= min(l={l}, n={n})")
    if l > m:
        raise ValueError(f"sketch size l={l} must not exceed the row count {m}")


def _min_norm_lstsq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Least-squares solve of a @ x = b via QR, never an explicit pseudo-inverse.

    A rank-deficient a (probability-zero event for the sketch systems) falls
    back to a minimum-norm solve through complete orthogonal factorization.
    """
    q, r = np.linalg.qr(a, mode="reduced")
    diag = np.abs(np.diagonal(r))
    if diag.size and diag.min() > max(a.shape) * np.finfo(np.float64).eps * diag.max():
        return scipy.linalg.solve_triangular(r, q.T @ b, check_finite=False)
    warnings.warn(
        "rank-deficient system in sketch correction solve; "
        "minimum-norm solution returned",
        RuntimeWarning,
    )
    return scipy.linalg.lstsq(a, b, lapack_driver="gelsd")[0]


def _two_sided_sketch(a: np.ndarray, k: int, l: int, power_iters: int, rng: RngStream) -> SketchResult:
    m, n = a.shape
    omega = orthonormalize(gaussian_matrix(rng, n, k))
    psi = orthonormalize(gaussian_matrix(rng, l, m).T).T
    y = a @ omega
    w = psi @ a
    q, _ = thin_qr(y)
    for _ in range(power_iters):
        q_hat, _ = thin_qr(a.T @ q)
        q, _ = thin_qr(a @ q_hat)
    xc = _min_norm_lstsq(psi @ q, w)
    return SketchResult(q, xc)


def sketch(a: np.ndarray, k: int, l: int, rng: RngStream) -> SketchResult:
    """Two-sided sketch giving a rank-<=k approximation q @ xc of a.

    Requires k <= min(l, n) and l <= m. Both test matrices are
    orthonormalized before use, which improves accuracy over raw Gaussians.
    """
    _check_sketch_params(*a.shape, k, l)
    return _two_sided_sketch(a, k, l, 0, rng)


def sub_sketch(a: np.ndarray, k: int, l: int, q: int, rng: RngStream) -> SketchResult:
    """Two-sided sketch with q rounds of subspace power iteration.

    Each round replaces the basis with an orthonormalized A @ (orthonormalized
    A.T @ Q), damping the contribution of trailing singular directions. With
    q = 0 this is exactly `sketch`, draw for draw.
    """
    if q < 0:
        raise ValueError("power iteration count must be nonnegative")
    _check_sketch_params(*a.shape, k, l)
    return _two_sided_sketch(a, k, l, q, rng)
