"""Quality measures and executable expected-error bounds.

The bound computations need the full singular spectrum of every mode
unfolding, so they are desk-scale testing utilities, not production paths.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import ApproxConfig
from .tensor import frobenius_norm, unfold

__all__ = [
    "SpectrumSummary",
    "spectrum_summary",
    "BoundReport",
    "ModeBound",
    "relative_error",
    "psnr",
    "tail_energy",
    "mode_tail_delta",
    "f_factor",
    "bound_oracle",
    "BOUND_VARIANTS",
]

BOUND_VARIANTS = ("thosvd", "sthosvd", "sketch", "sub_sketch")


@dataclass
class SpectrumSummary:
    """Full singular values of every mode unfolding, each sorted nonincreasing."""

    per_mode: list[np.ndarray]

    def mode(self, n: int) -> np.ndarray:
        if not 1 <= n <= len(self.per_mode):
            raise ValueError(f"mode {n} out of range")
        return self.per_mode[n - 1]


def spectrum_summary(x: np.ndarray) -> SpectrumSummary:
    """Dense SVD of each unfolding; the reference spectrum for all bounds."""
    return SpectrumSummary(
        [scipy.linalg.svdvals(unfold(x, n)) for n in range(1, x.ndim + 1)]
    )


def relative_error(x: np.ndarray, xhat: np.ndarray) -> float:
    """Frobenius-norm error of xhat relative to x."""
    if x.shape != xhat.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {xhat.shape}")
    ref = frobenius_norm(x)
    if ref == 0.0:
        raise ValueError("relative error is undefined for a zero reference tensor")
    return frobenius_norm(x - xhat) / ref


def psnr(x: np.ndarray, xhat: np.ndarray, peak: float) -> float:
    """Peak signal-to-noise ratio in dB; +inf when the inputs are identical."""
    if peak <= 0:
        raise ValueError("peak must be positive")
    if x.shape != xhat.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {xhat.shape}")
    mse = frobenius_norm(x - xhat) ** 2 / x.size
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def tail_energy(sigma: np.ndarray, j: int) -> float:
    """Sum of squared singular values from position j on (1-based).

    Equals the squared Frobenius error of the best rank-(j-1) approximation.
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    if not 1 <= j <= sigma.size + 1:
        raise ValueError(f"tail index {j} out of range for {sigma.size} values")
    return float(np.sum(sigma[j - 1 :] ** 2))


def mode_tail_delta(summary: SpectrumSummary, n: int, r: int) -> float:
    """Mode-n tail energy beyond rank r: sum of sigma_i^2 for i > r."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    sigma = summary.mode(n)
    return tail_energy(sigma, min(r, sigma.size) + 1)


def f_factor(s: float, t: float) -> float:
    """s / (t - s - 1); +inf at t == s + 1 where the bound turns vacuous."""
    if t < s + 1:
        raise ValueError(f"f({s}, {t}) requires t >= s + 1")
    if t == s + 1:
        return math.inf
    return s / (t - s - 1)


def _singular_gap(sigma: np.ndarray, r: int) -> float:
    """sigma_{r+1} / sigma_r, with 0 when either value vanishes."""
    lead = sigma[r - 1] if r <= sigma.size else 0.0
    trail = sigma[r] if r < sigma.size else 0.0
    if lead == 0.0:
        return 0.0
    return float(trail / lead)


@dataclass
class ModeBound:
    """One mode's contribution to an expected-error bound."""

    delta_sq: float
    chosen_rho: int | None
    term: float


@dataclass
class BoundReport:
    """Per-mode bound terms; the bound itself is their sum."""

    modes: list[ModeBound]

    @property
    def total(self) -> float:
        return sum(m.term for m in self.modes)


def _finite_product(*factors: float) -> float:
    """Product that treats any infinite factor as dominating (inf, never nan)."""
    if any(math.isinf(f) for f in factors):
        return math.inf
    return math.prod(factors)


def bound_oracle(x: np.ndarray, cfg: ApproxConfig, variant: str) -> BoundReport:
    """Expected squared-error bound for the chosen pipeline on this tensor.

    The deterministic variants bound the squared error by the sum of mode
    tail energies. The sketch variants carry the extra multiplicative
    factors of the randomized analysis; their inner minimum over the split
    index rho (1 <= rho < r_n - 1) is evaluated exhaustively, and an empty
    domain (r_n <= 2) makes the mode term +inf.
    """
    if variant not in BOUND_VARIANTS:
        raise ValueError(f"unknown bound variant {variant!r}")
    summary = spectrum_summary(x)
    ndim = x.ndim
    ranks = cfg.ranks_for(ndim)
    sizes = cfg.sketch_sizes_for(ndim)
    modes: list[ModeBound] = []
    for n in range(1, ndim + 1):
        r = ranks[n - 1]
        delta_sq = mode_tail_delta(summary, n, r)
        if variant in ("thosvd", "sthosvd"):
            modes.append(ModeBound(delta_sq, None, delta_sq))
            continue
        rho_domain = range(1, r - 1)
        if len(rho_domain) == 0:
            warnings.warn(
                f"mode {n}: no admissible split index for rank {r} <= 2; "
                "bound term is +inf",
                RuntimeWarning,
            )
            modes.append(ModeBound(delta_sq, None, math.inf))
            continue
        l = sizes[n - 1]
        if variant == "sketch":
            lead = f_factor(r, l)
            best_rho = min(rho_domain, key=lambda rho: r / (r - rho - 1))
            term = _finite_product(lead, r / (r - best_rho - 1), delta_sq)
            modes.append(ModeBound(delta_sq, best_rho, term))
        else:
            sigma = summary.mode(n)
            gap = _singular_gap(sigma, r)
            damping = gap ** (4 * cfg.power_iters)
            lead = 1.0 + f_factor(r, l)
            best_rho, best = None, math.inf
            for rho in rho_domain:
                cand = _finite_product(
                    1.0 + f_factor(rho, r) * damping, tail_energy(sigma, rho + 1)
                )
                if cand < best:
                    best_rho, best = rho, cand
            term = _finite_product(lead, best)
            modes.append(ModeBound(delta_sq, best_rho, term))
    return BoundReport(modes)
