"""Pipeline configuration.

All tunables the enhancement method leaves open are collected here with
their defaults. Construction validates every field; an invalid value raises
ConfigError rather than being silently clamped.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ConfigError

SATURATION_MAPS = ("robust", "minmax", "affine_after_clip")
TAU_IMAX_SCALES = ("native255", "normalized")
PSNR_PLANES = ("rgb", "intensity")


@dataclass(frozen=True)
class EnhanceConfig:
    """Tunables for the enhancement pipeline and metrics.

    um_gain          gain on the high-frequency residual added back by the
                     unsharp mask (0.8 is the tuned default)
    gaussian_size    odd kernel size of the low-pass Gaussian
    gaussian_sigma   sigma of the low-pass Gaussian
    clip_fraction    fraction clipped from each tail before saturation
                     equalization (0.002 = 0.2 percent)
    saturation_map   how the rescaled saturation is brought back to [0,1]:
                     "robust" (percentile clip + histogram equalization),
                     "minmax" (plain affine), or "affine_after_clip"
    division_epsilon guard below which the intensity ratio is treated as 1
    tau_imax_scale   scale of the intensity maximum entering the histogram
                     smoothing exponent: "native255" (0..255) or "normalized"
    loe_grid         lightness-order metric downsampling grid bound (<= 50)
    psnr_plane       compute PSNR over "rgb" jointly or the intensity plane
    histogram_bins   bin count of the intensity histogram machinery; fixed
    """

    um_gain: float = 0.8
    gaussian_size: int = 5
    gaussian_sigma: float = 1.0
    clip_fraction: float = 0.002
    saturation_map: str = "robust"
    division_epsilon: float = 1.0 / 255.0
    tau_imax_scale: str = "native255"
    loe_grid: int = 50
    psnr_plane: str = "rgb"
    histogram_bins: int = 256

    def __post_init__(self):
        if not (isinstance(self.um_gain, (int, float)) and self.um_gain >= 0):
            raise ConfigError(f"um_gain must be >= 0, got {self.um_gain!r}")
        if (
            not isinstance(self.gaussian_size, int)
            or self.gaussian_size < 3
            or self.gaussian_size % 2 == 0
        ):
            raise ConfigError(
                f"gaussian_size must be an odd integer >= 3, got {self.gaussian_size!r}"
            )
        if not (isinstance(self.gaussian_sigma, (int, float)) and self.gaussian_sigma > 0):
            raise ConfigError(f"gaussian_sigma must be > 0, got {self.gaussian_sigma!r}")
        if not (
            isinstance(self.clip_fraction, (int, float)) and 0 <= self.clip_fraction < 0.05
        ):
            raise ConfigError(
                f"clip_fraction must lie in [0, 0.05), got {self.clip_fraction!r}"
            )
        if self.saturation_map not in SATURATION_MAPS:
            raise ConfigError(
                f"saturation_map must be one of {SATURATION_MAPS}, got {self.saturation_map!r}"
            )
        if not (
            isinstance(self.division_epsilon, (int, float)) and 0 < self.division_epsilon < 1
        ):
            raise ConfigError(
                f"division_epsilon must lie in (0, 1), got {self.division_epsilon!r}"
            )
        if self.tau_imax_scale not in TAU_IMAX_SCALES:
            raise ConfigError(
                f"tau_imax_scale must be one of {TAU_IMAX_SCALES}, got {self.tau_imax_scale!r}"
            )
        if not isinstance(self.loe_grid, int) or not 1 <= self.loe_grid <= 50:
            raise ConfigError(f"loe_grid must be an integer in [1, 50], got {self.loe_grid!r}")
        if self.psnr_plane not in PSNR_PLANES:
            raise ConfigError(
                f"psnr_plane must be one of {PSNR_PLANES}, got {self.psnr_plane!r}"
            )
        if self.histogram_bins != 256:
            raise ConfigError(
                f"histogram_bins is fixed at 256, got {self.histogram_bins!r}"
            )

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_INT_KEYS = {"gaussian_size", "loe_grid", "histogram_bins"}
_FLOAT_KEYS = {"um_gain", "gaussian_sigma", "clip_fraction", "division_epsilon"}
_STR_KEYS = {"saturation_map", "tau_imax_scale", "psnr_plane"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def parse_config_text(text: str, source: str = "<config>") -> EnhanceConfig:
    """Parse a flat `key = value` config. Unknown keys are hard errors."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown config key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate config key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(val)
            except ValueError:
                raise ConfigError(f"{source}:{lineno}: {key} expects an integer, got {val!r}")
        elif key in _FLOAT_KEYS:
            try:
                values[key] = float(val)
            except ValueError:
                raise ConfigError(f"{source}:{lineno}: {key} expects a number, got {val!r}")
        else:
            values[key] = val
    return EnhanceConfig(**values)


def load_config(path) -> EnhanceConfig:
    """Load an EnhanceConfig from a flat key-value text file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))
