"""PNG decode/encode and the normalized in-memory image representation.

Pixels live as float64 planes in [0, 1], row-major. 8-bit channel value v
maps to v/255 on load; on save a real value maps back through
round-half-up(v * 255) clamped to [0, 255], so a byte-level round trip is
exact and a save/load round trip of arbitrary reals errs by at most 1/510
per sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    UnreadableFileError,
    UnsupportedFormatError,
    UnwritablePathError,
    ZeroDimensionImageError,
)


@dataclass(frozen=True)
class RgbImage:
    """Red/green/blue planes of reals in [0, 1], shape (height, width)."""

    width: int
    height: int
    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        expected = (self.height, self.width)
        for name in ("r", "g", "b"):
            plane = getattr(self, name)
            if plane.shape != expected:
                raise ValueError(
                    f"plane {name} has shape {plane.shape}, expected {expected}"
                )

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RgbImage":
        """Build from an (H, W, 3) float array, validating the invariants."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) array, got shape {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ZeroDimensionImageError("image has a zero dimension")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image contains non-finite samples")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("image samples must lie in [0, 1]")
        h, w = arr.shape[:2]
        return cls(
            width=w,
            height=h,
            r=np.ascontiguousarray(arr[:, :, 0]),
            g=np.ascontiguousarray(arr[:, :, 1]),
            b=np.ascontiguousarray(arr[:, :, 2]),
        )

    def to_array(self) -> np.ndarray:
        return np.stack([self.r, self.g, self.b], axis=-1)

    def validate(self) -> None:
        """Check the full invariants (finiteness and range on every plane)."""
        for name in ("r", "g", "b"):
            plane = getattr(self, name)
            if not np.all(np.isfinite(plane)):
                raise ValueError(f"plane {name} contains non-finite samples")
            if plane.min() < 0.0 or plane.max() > 1.0:
                raise ValueError(f"plane {name} has samples outside [0, 1]")


def quantize_u8(plane: np.ndarray) -> np.ndarray:
    """Map reals to 8-bit levels: round-half-up(v * 255), clamped to [0, 255].

    np.round would round half to even; floor(x + 0.5) gives the deterministic
    half-up rule, and the +0.5 also absorbs the 1-ulp error of k/255 * 255 so
    byte round trips stay exact.
    """
    return np.clip(np.floor(plane * 255.0 + 0.5), 0.0, 255.0).astype(np.uint8)


def load_image(path) -> RgbImage:
    """Decode a PNG file into an RgbImage.

    Only PNG is accepted (lossless by construction); RGBA alpha is discarded;
    8-bit gray and palette images are expanded to RGB.
    """
    path = Path(path)
    try:
        with Image.open(path) as img:
            if img.format != "PNG":
                raise UnsupportedFormatError(
                    f"{path}: format {img.format!r} not supported, PNG required"
                )
            if img.width == 0 or img.height == 0:
                raise ZeroDimensionImageError(f"{path}: image has a zero dimension")
            if img.mode not in ("RGB", "RGBA", "L", "LA", "P"):
                raise UnsupportedFormatError(
                    f"{path}: pixel mode {img.mode!r} not supported (8-bit only)"
                )
            rgb = img.convert("RGB")
            arr = np.asarray(rgb, dtype=np.float64) / 255.0
    except FileNotFoundError as exc:
        raise UnreadableFileError(f"{path}: file not found") from exc
    except UnidentifiedImageError as exc:
        raise UnreadableFileError(f"{path}: not a decodable image") from exc
    except OSError as exc:
        raise UnreadableFileError(f"{path}: {exc}") from exc
    return RgbImage.from_array(arr)


def save_image(img: RgbImage, path) -> None:
    """Encode an RgbImage to an 8-bit RGB PNG at `path`."""
    path = Path(path)
    data = np.stack(
        [quantize_u8(img.r), quantize_u8(img.g), quantize_u8(img.b)], axis=-1
    )
    pil = Image.fromarray(data, mode="RGB")
    try:
        pil.save(path, format="PNG")
    except OSError as exc:
        raise UnwritablePathError(f"{path}: {exc}") from exc


def gray_image(plane: np.ndarray) -> RgbImage:
    """Wrap a single [0, 1] plane as a gray RgbImage (handy for debug dumps)."""
    plane = np.asarray(plane, dtype=np.float64)
    h, w = plane.shape
    return RgbImage(width=w, height=h, r=plane.copy(), g=plane.copy(), b=plane.copy())
