"""Unsharp masking with a Gaussian low-pass residual.

Instead of a high-pass filter (which passes noise straight through), the
high-frequency detail is taken as the input minus its Gaussian blur, scaled
by a gain, and added onto the gamma-transformed intensity:

    sharpened = transformed + gain * (original - blur(original))

Borders replicate edge pixels, so constant planes are exact fixed points of
the residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import SizeMismatchError


@dataclass(frozen=True)
class GaussianKernel:
    """Normalized 2-D Gaussian weights (odd size, symmetric, sum 1)."""

    size: int
    sigma: float
    weights: np.ndarray


def gaussian_kernel(size: int, sigma: float) -> GaussianKernel:
    """Build a size x size Gaussian kernel normalized to sum exactly 1."""
    if not isinstance(size, int) or size < 3 or size % 2 == 0:
        raise ValueError(f"kernel size must be an odd integer >= 3, got {size!r}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    half = size // 2
    offsets = np.arange(-half, half + 1, dtype=np.float64)
    di, dj = np.meshgrid(offsets, offsets, indexing="ij")
    weights = np.exp(-(di**2 + dj**2) / (2.0 * sigma**2))
    weights /= weights.sum()
    return GaussianKernel(size=size, sigma=float(sigma), weights=weights)


def convolve(plane: np.ndarray, kernel: GaussianKernel) -> np.ndarray:
    """2-D correlation with replicate (clamp-to-edge) borders, same size out."""
    if plane.size == 0:
        raise ValueError("cannot convolve an empty plane")
    return kernels.convolve2d(plane, kernel.weights)


def unsharp_enhance(
    transformed: np.ndarray,
    norm_plane: np.ndarray,
    gain: float = 0.8,
    kernel: GaussianKernel | None = None,
) -> np.ndarray:
    """Add the scaled low-pass residual of `norm_plane` onto `transformed`.

    Result is clamped to [0, 1]; with gain 0 or a constant input the output
    equals `transformed` exactly.
    """
    if transformed.shape != norm_plane.shape:
        raise SizeMismatchError(
            f"plane shapes differ: {transformed.shape} vs {norm_plane.shape}"
        )
    if gain == 0.0:
        return transformed.copy()
    if float(norm_plane.min()) == float(norm_plane.max()):
        # blur of a constant is that constant, so the residual is exactly 0;
        # skipping the convolution keeps the identity free of rounding dust
        return transformed.copy()
    if kernel is None:
        kernel = gaussian_kernel(5, 1.0)
    residual = norm_plane - convolve(norm_plane, kernel)
    return np.clip(transformed + gain * residual, 0.0, 1.0)
