"""Deterministic synthetic test images.

Seeded generators producing the kind of frame this pipeline targets: dark,
low-contrast illumination, broadly varying tissue-like color, a few bright
specular specks, and sparse near-black saturated pixels. Those dark pixels
are the interesting part: the saturation restoration divides by a tiny
intensity there, so their rescaled saturation overshoots by several times
and stresses the outlier handling exactly the way the min-max remap cannot
survive. Pixels are snapped to the 8-bit grid so a PNG round trip
reproduces the array exactly.
"""

from __future__ import annotations

import numpy as np

from .color_space import HsiImage, hsi_to_rgb
from .image_io import quantize_u8, RgbImage


def _smooth_noise(rng: np.random.Generator, size: int, cells: int) -> np.ndarray:
    """Band-limited noise in [-1, 1]: coarse white noise upsampled bilinearly."""
    coarse = rng.uniform(-1.0, 1.0, (cells, cells))
    idx = np.linspace(0, cells - 1, size)
    i0 = np.floor(idx).astype(int)
    i1 = np.minimum(i0 + 1, cells - 1)
    frac = idx - i0
    out = coarse[i0][:, i0] * np.outer(1 - frac, 1 - frac)
    out += coarse[i1][:, i0] * np.outer(frac, 1 - frac)
    out += coarse[i0][:, i1] * np.outer(1 - frac, frac)
    out += coarse[i1][:, i1] * np.outer(frac, frac)
    return out


def _rank_flatten(field: np.ndarray) -> np.ndarray:
    """Remap a field through its own ranks onto a uniform [0, 1] spread."""
    order = np.argsort(field, axis=None, kind="stable")
    ranks = np.empty(field.size)
    ranks[order] = np.arange(field.size)
    return ((ranks + 0.5) / field.size).reshape(field.shape)


def make_fixture(seed: int, size: int = 360) -> RgbImage:
    """One dark low-contrast frame, deterministic in the seed."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size] / max(size - 1, 1)

    # dark, flat illumination: gentle diagonal drift plus a soft vignette
    radius2 = (xx - 0.5) ** 2 + (yy - 0.5) ** 2
    intensity = 0.42 + 0.05 * xx + 0.03 * yy - 0.07 * radius2
    intensity += 0.025 * _smooth_noise(rng, size, 24)
    intensity += 0.010 * _smooth_noise(rng, size, 90)
    intensity += rng.normal(0.0, 0.004, (size, size))

    # hue wanders across the whole circle; saturation spans a wide, nearly
    # uniform range so it carries real lightness structure
    hue = np.pi * (1.0 + 0.9 * _smooth_noise(rng, size, 7) + 0.25 * _smooth_noise(rng, size, 30))
    hue = np.mod(hue, 2.0 * np.pi)
    satfield = _smooth_noise(rng, size, 12) + 0.35 * _smooth_noise(rng, size, 45)
    saturation = 0.07 + 0.73 * _rank_flatten(satfield)

    # bright, nearly achromatic specular specks pin the intensity maximum
    for _ in range(6):
        cy, cx = rng.integers(0, size, 2)
        r = rng.integers(2, 5)
        spot = (yy * (size - 1) - cy) ** 2 + (xx * (size - 1) - cx) ** 2 <= r * r
        intensity[spot] = rng.uniform(0.92, 0.96)
        saturation[spot] = rng.uniform(0.01, 0.04)

    # sparse one-level-above-black saturated pixels; their restored
    # saturation overshoots by a factor of several
    n_dark = max(8, size * size // 5400)
    ys = rng.integers(0, size, n_dark)
    xs = rng.integers(0, size, n_dark)
    intensity[ys, xs] = 1.0 / 255.0
    saturation[ys, xs] = rng.uniform(0.7, 0.95, n_dark)

    intensity = np.clip(intensity, 1.0 / 255.0, 0.96)
    # keep the recombination in gamut: max channel is at most i*(1+2s)
    saturation = np.minimum(
        saturation, np.clip((1.0 / intensity - 1.0) / 2.0, 0.0, 0.95)
    )

    rgb = hsi_to_rgb(HsiImage(width=size, height=size, h=hue, s=saturation, i=intensity))
    arr = np.stack(
        [quantize_u8(rgb.r), quantize_u8(rgb.g), quantize_u8(rgb.b)], axis=-1
    ).astype(np.float64) / 255.0
    return RgbImage.from_array(arr)


def fixture_suite(count: int = 5, size: int = 360, base_seed: int = 20240) -> list[RgbImage]:
    """The bundled acceptance fixtures: `count` frames with distinct seeds."""
    return [make_fixture(base_seed + k, size) for k in range(count)]
