"""RGB <-> HSI conversion and intensity normalization.

The HSI model used is the classical geometric one: intensity is the channel
mean, saturation measures distance from gray, and hue is the angle around
the color circle in radians, [0, 2*pi). Achromatic pixels (r = g = b) get
hue 0 and saturation 0 canonically so round trips are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image_io import RgbImage

TWO_PI = 2.0 * np.pi
_TINY = 1e-30


@dataclass(frozen=True)
class HsiImage:
    """Hue (radians, [0, 2*pi)), saturation [0, 1], intensity [0, 1] planes."""

    width: int
    height: int
    h: np.ndarray
    s: np.ndarray
    i: np.ndarray


@dataclass(frozen=True)
class NormalizedIntensity:
    """Intensity plane rescaled so its maximum is 1, plus the original max.

    For an all-zero plane normalization is the identity and i_max is 0; the
    pipeline treats that as the degenerate short-circuit case.
    """

    plane: np.ndarray
    i_max: float


def rgb_to_hsi(img: RgbImage) -> HsiImage:
    r, g, b = img.r, img.g, img.b
    total = r + g + b
    intensity = total / 3.0

    min_c = np.minimum(np.minimum(r, g), b)
    with np.errstate(divide="ignore", invalid="ignore"):
        sat = 1.0 - 3.0 * min_c / np.where(total > 0.0, total, 1.0)
    sat = np.where(total > 0.0, sat, 0.0)
    sat = np.clip(sat, 0.0, 1.0)

    num = 0.5 * ((r - g) + (r - b))
    den = np.sqrt((r - g) ** 2 + (r - b) * (g - b))
    cos_arg = np.clip(num / np.maximum(den, _TINY), -1.0, 1.0)
    theta = np.arccos(cos_arg)
    hue = np.where(b > g, TWO_PI - theta, theta)

    achromatic = (r == g) & (g == b)
    hue = np.where(achromatic | (den <= _TINY), 0.0, hue)
    sat = np.where(achromatic, 0.0, sat)
    # 2*pi - arccos(-1) folds back to 0
    hue = np.where(hue >= TWO_PI, 0.0, hue)

    return HsiImage(width=img.width, height=img.height, h=hue, s=sat, i=intensity)


def hsi_to_rgb(img: HsiImage) -> RgbImage:
    """Sector-wise inverse of rgb_to_hsi; outputs clamped to [0, 1]."""
    h, s, i = img.h, img.s, img.i
    third = TWO_PI / 3.0

    sector = np.floor_divide(np.clip(h, 0.0, TWO_PI - 1e-15), third).astype(np.int64)
    sector = np.clip(sector, 0, 2)
    local = h - sector * third

    ratio = np.cos(local) / np.cos(np.pi / 3.0 - local)
    first = i * (1.0 - s)  # channel opposite the active sector
    second = i * (1.0 + s * ratio)
    rest = 3.0 * i - (first + second)

    r = np.where(sector == 0, second, np.where(sector == 1, first, rest))
    g = np.where(sector == 0, rest, np.where(sector == 1, second, first))
    b = np.where(sector == 0, first, np.where(sector == 1, rest, second))

    arr = np.clip(np.stack([r, g, b], axis=-1), 0.0, 1.0)
    return RgbImage(
        width=img.width,
        height=img.height,
        r=np.ascontiguousarray(arr[:, :, 0]),
        g=np.ascontiguousarray(arr[:, :, 1]),
        b=np.ascontiguousarray(arr[:, :, 2]),
    )


def normalize_intensity(plane: np.ndarray) -> NormalizedIntensity:
    """Divide the intensity plane by its maximum (identity if the max is 0)."""
    if plane.size == 0:
        raise ValueError("cannot normalize an empty plane")
    i_max = float(plane.max())
    if i_max <= 0.0:
        return NormalizedIntensity(plane=plane.copy(), i_max=0.0)
    return NormalizedIntensity(plane=plane / i_max, i_max=i_max)
