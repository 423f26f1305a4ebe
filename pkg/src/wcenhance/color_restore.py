"""Saturation restoration after intensity enhancement.

Brightening the intensity plane alone washes color out, so saturation is
rescaled by the same per-pixel gain the intensity received. The rescaled
values can overshoot 1 badly at dark pixels (tiny denominators), which is
exactly why the default remapping clips a small percentile tail before
histogram-equalizing back onto [0, 1]; the plain min-max remap is kept as a
selectable variant because a single outlier makes it collapse everything
else toward gray.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeMismatchError

N_BINS = 256


def restore_saturation(
    saturation: np.ndarray,
    sharpened: np.ndarray,
    norm_plane: np.ndarray,
    eps: float = 1.0 / 255.0,
) -> np.ndarray:
    """Scale saturation by the intensity gain sharpened/normalized, per pixel.

    Where the normalized intensity falls below `eps` (one 8-bit level by
    default) the ratio is numerically meaningless and is taken as 1, leaving
    the saturation untouched there. The result is intentionally NOT clamped;
    the follow-up mapping owns range normalization.
    """
    if not (saturation.shape == sharpened.shape == norm_plane.shape):
        raise SizeMismatchError(
            f"plane shapes differ: {saturation.shape}, {sharpened.shape}, {norm_plane.shape}"
        )
    safe = np.where(norm_plane < eps, 1.0, norm_plane)
    gain = np.where(norm_plane < eps, 1.0, sharpened / safe)
    return saturation * gain


def nearest_rank_percentile(sorted_values: np.ndarray, fraction: float) -> float:
    """Nearest-rank percentile of an ascending array, fraction in [0, 1]."""
    n = sorted_values.size
    rank = int(np.ceil(fraction * n))
    rank = min(max(rank, 1), n)
    return float(sorted_values[rank - 1])


def clip_bounds(plane: np.ndarray, clip_fraction: float) -> tuple[float, float]:
    """Lower/upper nearest-rank percentile bounds for tail clipping."""
    flat = np.sort(plane, axis=None)
    lo = nearest_rank_percentile(flat, clip_fraction)
    hi = nearest_rank_percentile(flat, 1.0 - clip_fraction)
    return lo, hi


def _equalize(clipped: np.ndarray, lo: float, hi: float) -> np.ndarray:
    # 256-bin histogram over [lo, hi], round-half-up binning, then the classic
    # cumulative-histogram map onto [0, 1]
    idx = np.floor((clipped - lo) / (hi - lo) * (N_BINS - 1) + 0.5)
    idx = np.clip(idx, 0, N_BINS - 1).astype(np.int64)
    counts = np.bincount(idx.ravel(), minlength=N_BINS).astype(np.float64)
    cdf = np.cumsum(counts)
    cdf /= cdf[-1]
    return cdf[idx]


def robust_map(
    plane: np.ndarray, clip_fraction: float = 0.002, eps: float = 1.0 / 255.0
) -> np.ndarray:
    """Percentile-clip both tails, then histogram-equalize onto [0, 1].

    Clipping happens first, so outliers collapse onto the percentile bound
    and cannot stretch the mapping. If the clipped range is degenerate
    (below `eps` wide) the clipped plane is returned clamped to [0, 1]
    unchanged.
    """
    if plane.size == 0:
        raise ValueError("cannot map an empty plane")
    lo, hi = clip_bounds(plane, clip_fraction)
    clipped = np.clip(plane, lo, hi)
    if hi - lo < eps:
        return np.clip(clipped, 0.0, 1.0)
    return _equalize(clipped, lo, hi)


def affine_after_clip(
    plane: np.ndarray, clip_fraction: float = 0.002, eps: float = 1.0 / 255.0
) -> np.ndarray:
    """Percentile-clip both tails, then affinely rescale onto [0, 1]."""
    if plane.size == 0:
        raise ValueError("cannot map an empty plane")
    lo, hi = clip_bounds(plane, clip_fraction)
    clipped = np.clip(plane, lo, hi)
    if hi - lo < eps:
        return np.clip(clipped, 0.0, 1.0)
    return (clipped - lo) / (hi - lo)


def minmax_map(plane: np.ndarray, eps: float = 1.0 / 255.0) -> np.ndarray:
    """Affine remap of the full range onto [0, 1] (the fragile baseline)."""
    if plane.size == 0:
        raise ValueError("cannot map an empty plane")
    lo = float(plane.min())
    hi = float(plane.max())
    if hi - lo < eps:
        return np.clip(plane, 0.0, 1.0)
    return (plane - lo) / (hi - lo)


def map_saturation(
    plane: np.ndarray,
    variant: str = "robust",
    clip_fraction: float = 0.002,
    eps: float = 1.0 / 255.0,
) -> np.ndarray:
    """Dispatch to the configured saturation mapping variant."""
    if variant == "robust":
        return robust_map(plane, clip_fraction, eps)
    if variant == "minmax":
        return minmax_map(plane, eps)
    if variant == "affine_after_clip":
        return affine_after_clip(plane, clip_fraction, eps)
    raise ValueError(f"unknown saturation mapping variant {variant!r}")
