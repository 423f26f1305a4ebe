"""Histogram statistics and the adaptive fraction-gamma intensity transform.

The transform maps each normalized intensity v through
(v**gamma / (2 - v**gamma)) ** exponent, where gamma = 1 + arctan(v - 0.5)
brightens dark pixels and compresses bright ones, and the per-level exponent
1 / (1 + cdf) comes from a smoothed-histogram cumulative distribution. The
smoothing power scales with the image standard deviation, so flat images are
barely touched while contrasty ones get a stronger redistribution.

All statistics are discretized to 256 levels (bin k holds level k/255, with
round-half-up binning to match the 8-bit codec).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .color_space import NormalizedIntensity
from .image_io import quantize_u8

N_BINS = 256
LEVELS = np.arange(N_BINS, dtype=np.float64) / (N_BINS - 1)
LEVELS.setflags(write=False)


@dataclass(frozen=True)
class IntensityHistogram:
    """256-level pdf of a normalized intensity plane plus derived tables.

    pdf sums to 1; smoothed_pdf is the variance-driven reshaping of pdf;
    cdf is the running sum of smoothed_pdf renormalized to end at 1;
    level_exponents holds 1/(1 + cdf), nonincreasing in [0.5, 1].
    """

    pdf: np.ndarray
    pdf_max: float
    pdf_min: float
    smoothed_pdf: np.ndarray
    cdf: np.ndarray
    level_exponents: np.ndarray
    smoothing_exponent: float
    mean_level: float

    def to_json_dict(self) -> dict:
        return {
            "pdf": self.pdf.tolist(),
            "pdf_max": self.pdf_max,
            "pdf_min": self.pdf_min,
            "smoothed_pdf": self.smoothed_pdf.tolist(),
            "cdf": self.cdf.tolist(),
            "level_exponents": self.level_exponents.tolist(),
            "smoothing_exponent": self.smoothing_exponent,
            "mean_level": self.mean_level,
        }


@dataclass(frozen=True)
class GammaTransformResult:
    """Transformed intensity plane plus the histogram that shaped it."""

    plane: np.ndarray
    histogram: IntensityHistogram


def level_bins(plane: np.ndarray) -> np.ndarray:
    """256-level bin index of each sample, round-half-up like the codec."""
    return quantize_u8(plane).astype(np.int64)


def compute_pdf(plane: np.ndarray) -> np.ndarray:
    """256-bin probability density of a [0, 1] plane (sums to 1)."""
    counts = np.bincount(level_bins(plane).ravel(), minlength=N_BINS)
    return counts.astype(np.float64) / plane.size


def compute_smoothing_exponent(pdf: np.ndarray, i_max_native: float) -> float:
    """Histogram-smoothing power: intensity max times level std times 1%.

    i_max_native is the pre-normalization intensity maximum; on the native
    8-bit scale (0..255, the default) the exponent lands in a useful range,
    while on the normalized scale it stays tiny and the smoothing is nearly
    a no-op.
    """
    mean = float(np.dot(LEVELS, pdf))
    var = float(np.dot((LEVELS - mean) ** 2, pdf))
    return i_max_native * np.sqrt(var) * 0.01


def smooth_pdf(pdf: np.ndarray, exponent: float) -> np.ndarray:
    """pdf_max * ((pdf - pdf_min)/(pdf_max - pdf_min)) ** exponent per bin.

    A perfectly uniform pdf or a zero exponent bypasses to the raw pdf (the
    formula degenerates to 0/0 there and the raw pdf is its natural limit).
    """
    pdf_max = float(pdf.max())
    pdf_min = float(pdf.min())
    if exponent == 0.0 or pdf_max == pdf_min:
        return pdf.copy()
    scaled = (pdf - pdf_min) / (pdf_max - pdf_min)
    return pdf_max * np.power(scaled, exponent)


def cumulative_from_smoothed(smoothed: np.ndarray, raw_pdf: np.ndarray) -> np.ndarray:
    """Running sum of the smoothed pdf, renormalized to end at exactly 1.

    Falls back to the cumulative of the raw pdf if the smoothed pdf sums to
    zero (cannot happen for a well-formed smoothed pdf; kept as a guard).
    """
    cdf = np.cumsum(smoothed)
    if cdf[-1] <= 0.0:
        cdf = np.cumsum(raw_pdf)
    return cdf / cdf[-1]


def exponent_table(cdf: np.ndarray) -> np.ndarray:
    """Per-level output exponent 1/(1 + cdf): 1 at cdf 0, 0.5 at cdf 1."""
    return 1.0 / (1.0 + cdf)


def pixel_gamma(values):
    """Per-pixel gamma 1 + arctan(v - 0.5), radians: 1 at mid-gray,
    below 1 in the dark half (brightening), above 1 in the bright half."""
    return 1.0 + np.arctan(np.asarray(values, dtype=np.float64) - 0.5)


def build_histogram(
    norm: NormalizedIntensity, tau_imax_scale: str = "native255"
) -> IntensityHistogram:
    """Full histogram statistics for a normalized intensity plane."""
    pdf = compute_pdf(norm.plane)
    i_max_native = norm.i_max * 255.0 if tau_imax_scale == "native255" else norm.i_max
    exponent = compute_smoothing_exponent(pdf, i_max_native)
    mean = float(np.dot(LEVELS, pdf))
    smoothed = smooth_pdf(pdf, exponent)
    cdf = cumulative_from_smoothed(smoothed, pdf)
    return IntensityHistogram(
        pdf=pdf,
        pdf_max=float(pdf.max()),
        pdf_min=float(pdf.min()),
        smoothed_pdf=smoothed,
        cdf=cdf,
        level_exponents=exponent_table(cdf),
        smoothing_exponent=exponent,
        mean_level=mean,
    )


def apply_fraction_gamma(
    norm: NormalizedIntensity, tau_imax_scale: str = "native255"
) -> GammaTransformResult:
    """Apply the adaptive fraction-gamma transform to a normalized plane.

    Exact 0 and exact 1 are fixed points; all outputs stay in [0, 1]. An
    all-equal plane carries no contrast to redistribute and passes through
    unchanged (its histogram is still computed and attached).
    """
    plane = norm.plane
    hist = build_histogram(norm, tau_imax_scale)
    if float(plane.min()) == float(plane.max()):
        return GammaTransformResult(plane=plane.copy(), histogram=hist)
    gamma = pixel_gamma(plane)
    powered = np.power(plane, gamma)
    fraction = powered / (2.0 - powered)
    out = np.power(fraction, hist.level_exponents[level_bins(plane)])
    return GammaTransformResult(plane=np.clip(out, 0.0, 1.0), histogram=hist)
