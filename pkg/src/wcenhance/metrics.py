"""Objective quality metrics for original/enhanced image pairs.

Five scores: information richness restricted to mid-tones (mean local
entropy weighted by middle-third histogram mass), colorfulness ratio,
lightness-order inversion rate, PSNR, and single-scale SSIM. Identical
inputs score the identities (ratio 1, inversions 0, SSIM 1, PSNR infinite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .adaptive_gamma import compute_pdf
from .errors import ImageTooSmallError, SizeMismatchError, UndefinedMetricError
from .image_io import RgbImage
from .unsharp import gaussian_kernel

ENTROPY_WINDOW = 9
# 256-level bins covering intensity [1/3, 2/3]: 85/255 and 170/255 exactly
MID_BIN_LO = 85
MID_BIN_HI = 170

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03
PEAK = 255.0


def _check_same_size(a: RgbImage, b: RgbImage) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise SizeMismatchError(
            f"image sizes differ: {a.width}x{a.height} vs {b.width}x{b.height}"
        )


def intensity_plane(img: RgbImage) -> np.ndarray:
    return (img.r + img.g + img.b) / 3.0


def local_entropy(plane: np.ndarray, window: int = ENTROPY_WINDOW) -> np.ndarray:
    """Entropy in bits of the 256-bin histogram of each pixel's window.

    Borders are replicate-padded; values lie in [0, log2(window**2)].
    """
    if plane.size == 0:
        raise ValueError("cannot compute entropy of an empty plane")
    from .adaptive_gamma import level_bins

    return kernels.window_entropy(level_bins(plane).astype(np.uint8), window)


def irmle(plane: np.ndarray) -> float:
    """Mean local entropy weighted by the histogram mass in the middle
    intensity third. Zero iff the image is flat or has no mid-tone mass."""
    le_mean = float(local_entropy(plane).mean())
    mid_mass = float(compute_pdf(plane)[MID_BIN_LO : MID_BIN_HI + 1].sum())
    return le_mean * mid_mass


def colorfulness(img: RgbImage) -> float:
    """Opponent-axis colorfulness: spread plus 0.3 times distance from gray."""
    rg = img.r - img.g
    yb = 0.5 * (img.r + img.g) - img.b
    var_rg = float(rg.var())
    var_yb = float(yb.var())
    mean_rg = float(rg.mean())
    mean_yb = float(yb.mean())
    return math.sqrt(var_rg + var_yb) + 0.3 * math.sqrt(mean_rg**2 + mean_yb**2)


def cef(orig: RgbImage, enh: RgbImage) -> float:
    """Colorfulness of the enhanced image over the original's.

    Raises UndefinedMetricError for a gray original (colorfulness 0); the
    ratio has no defined value there.
    """
    _check_same_size(orig, enh)
    base = colorfulness(orig)
    if base <= 0.0:
        raise UndefinedMetricError("original image is gray; colorfulness ratio undefined")
    return colorfulness(enh) / base


def lightness(img: RgbImage) -> np.ndarray:
    """Per-pixel lightness: the maximum of the three channels."""
    return np.maximum(np.maximum(img.r, img.g), img.b)


def block_downsample(plane: np.ndarray, grid: int) -> np.ndarray:
    """Block-average a plane down to at most grid x grid cells.

    Block edges split the axis as evenly as integer arithmetic allows; every
    pixel belongs to exactly one block. Planes already within the grid pass
    through unchanged.
    """
    h, w = plane.shape
    gh, gw = min(grid, h), min(grid, w)
    if gh == h and gw == w:
        return plane.astype(np.float64, copy=True)
    row_starts = (np.arange(gh, dtype=np.int64) * h) // gh
    col_starts = (np.arange(gw, dtype=np.int64) * w) // gw
    sums = np.add.reduceat(np.add.reduceat(plane, row_starts, axis=0), col_starts, axis=1)
    row_sizes = np.diff(np.append(row_starts, h))
    col_sizes = np.diff(np.append(col_starts, w))
    return sums / np.outer(row_sizes, col_sizes)


def loe(orig: RgbImage, enh: RgbImage, grid: int = 50) -> float:
    """Lightness-order error: 100 times the pairwise inversion rate.

    Both lightness maps are block-averaged to at most grid x grid, then all
    ordered pixel pairs are compared; a pair counts when its >= relation
    differs between the two maps. 0 means the lightness order is untouched.
    """
    _check_same_size(orig, enh)
    lo = block_downsample(lightness(orig), grid).ravel()
    le = block_downsample(lightness(enh), grid).ravel()
    inversions = kernels.order_inversions(lo, le)
    m = lo.size
    return 100.0 * inversions / (m * m)


def psnr(orig: RgbImage, enh: RgbImage, plane: str = "rgb") -> float:
    """Peak signal-to-noise ratio in dB on the 8-bit scale; inf if identical.

    plane="rgb" pools the squared error over all three channels jointly;
    plane="intensity" scores the channel-mean plane instead.
    """
    _check_same_size(orig, enh)
    if plane == "rgb":
        diff = (orig.to_array() - enh.to_array()) * PEAK
    elif plane == "intensity":
        diff = (intensity_plane(orig) - intensity_plane(enh)) * PEAK
    else:
        raise ValueError(f"unknown psnr plane {plane!r}")
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def ssim(orig: RgbImage, enh: RgbImage) -> float:
    """Mean single-scale SSIM of the luminance planes.

    11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, dynamic range 255,
    averaged over window positions fully inside the image.
    """
    _check_same_size(orig, enh)
    if min(orig.width, orig.height) < SSIM_WINDOW:
        raise ImageTooSmallError(
            f"SSIM needs at least {SSIM_WINDOW}x{SSIM_WINDOW}, "
            f"got {orig.width}x{orig.height}"
        )
    x = intensity_plane(orig) * PEAK
    y = intensity_plane(enh) * PEAK
    window = gaussian_kernel(SSIM_WINDOW, SSIM_SIGMA).weights
    half = SSIM_WINDOW // 2
    valid = np.s_[half:-half, half:-half]

    mu_x = kernels.convolve2d(x, window)[valid]
    mu_y = kernels.convolve2d(y, window)[valid]
    var_x = kernels.convolve2d(x * x, window)[valid] - mu_x * mu_x
    var_y = kernels.convolve2d(y * y, window)[valid] - mu_y * mu_y
    cov = kernels.convolve2d(x * y, window)[valid] - mu_x * mu_y

    c1 = (SSIM_K1 * PEAK) ** 2
    c2 = (SSIM_K2 * PEAK) ** 2
    ssim_map = ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) / (
        (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    )
    return float(ssim_map.mean())


# ---------------------------------------------------------------------------
# report container and serialization


def _sig6(value: float) -> float:
    return float(f"{value:.6g}")


def format_metric(value) -> str:
    """Render one metric for CSV: 6 significant digits, inf/undefined spelled out."""
    if value is None:
        return "nan"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.6g}"


def metric_to_json(value):
    if value is None:
        return None
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return _sig6(value)


def metric_from_json(value):
    if value is None:
        return None
    if value == "inf":
        return math.inf
    return float(value)


@dataclass(frozen=True)
class MetricsReport:
    """All per-pair scores plus the enhancement wall time.

    irmle_ratio and cef are None when undefined (flat or gray original);
    psnr is math.inf for identical inputs.
    """

    irmle_orig: float
    irmle_enh: float
    irmle_ratio: float | None
    cef: float | None
    loe: float
    psnr: float
    ssim: float
    wall_time_ms: float

    FIELDS = (
        "irmle_orig",
        "irmle_enh",
        "irmle_ratio",
        "cef",
        "loe",
        "psnr",
        "ssim",
        "wall_time_ms",
    )

    def to_json_dict(self) -> dict:
        return {name: metric_to_json(getattr(self, name)) for name in self.FIELDS}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MetricsReport":
        return cls(**{name: metric_from_json(data[name]) for name in cls.FIELDS})

    def csv_values(self) -> list[str]:
        return [format_metric(getattr(self, name)) for name in self.FIELDS]
