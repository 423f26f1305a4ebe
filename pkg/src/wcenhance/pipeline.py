"""The full enhancement pipeline and pair evaluation.

Stage order is fixed: RGB to HSI, intensity normalization, adaptive
fraction-gamma transform, unsharp masking, saturation restoration, then
recombination with the original hue. Intermediates stay in full float
precision; quantization happens only when the result is encoded to a file.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import color_restore, metrics, unsharp
from .adaptive_gamma import IntensityHistogram, apply_fraction_gamma
from .color_space import hsi_to_rgb, HsiImage, normalize_intensity, rgb_to_hsi
from .config import EnhanceConfig
from .errors import SizeMismatchError, UndefinedMetricError
from .image_io import RgbImage
from .metrics import MetricsReport


@dataclass(frozen=True)
class DebugBundle:
    """Intermediate planes of one enhancement run, for inspection dumps.

    degenerate is True for the all-zero input short circuit, in which case
    the planes other than norm_plane are None.
    """

    degenerate: bool
    i_max: float
    norm_plane: np.ndarray
    transformed: np.ndarray | None = None
    sharpened: np.ndarray | None = None
    raw_saturation: np.ndarray | None = None
    mapped_saturation: np.ndarray | None = None
    histogram: IntensityHistogram | None = None


def enhance(img: RgbImage, cfg: EnhanceConfig | None = None) -> tuple[RgbImage, DebugBundle]:
    """Run the whole pipeline on one image.

    Deterministic: identical input and config give a bit-identical output.
    An all-black input has no intensity to normalize and is returned
    unchanged.
    """
    if cfg is None:
        cfg = EnhanceConfig()
    hsi = rgb_to_hsi(img)
    norm = normalize_intensity(hsi.i)
    if norm.i_max <= 0.0:
        bundle = DebugBundle(degenerate=True, i_max=0.0, norm_plane=norm.plane)
        out = RgbImage(
            width=img.width, height=img.height,
            r=img.r.copy(), g=img.g.copy(), b=img.b.copy(),
        )
        return out, bundle

    result = apply_fraction_gamma(norm, tau_imax_scale=cfg.tau_imax_scale)
    kernel = unsharp.gaussian_kernel(cfg.gaussian_size, cfg.gaussian_sigma)
    sharpened = unsharp.unsharp_enhance(
        result.plane, norm.plane, gain=cfg.um_gain, kernel=kernel
    )
    raw_sat = color_restore.restore_saturation(
        hsi.s, sharpened, norm.plane, eps=cfg.division_epsilon
    )
    mapped_sat = color_restore.map_saturation(
        raw_sat,
        variant=cfg.saturation_map,
        clip_fraction=cfg.clip_fraction,
        eps=cfg.division_epsilon,
    )
    out = hsi_to_rgb(
        HsiImage(width=img.width, height=img.height, h=hsi.h, s=mapped_sat, i=sharpened)
    )
    bundle = DebugBundle(
        degenerate=False,
        i_max=norm.i_max,
        norm_plane=norm.plane,
        transformed=result.plane,
        sharpened=sharpened,
        raw_saturation=raw_sat,
        mapped_saturation=mapped_sat,
        histogram=result.histogram,
    )
    return out, bundle


def evaluate(
    orig: RgbImage,
    enh: RgbImage,
    cfg: EnhanceConfig | None = None,
    wall_time_ms: float = 0.0,
) -> MetricsReport:
    """Score an original/enhanced pair with all five metrics.

    The colorfulness ratio of a gray original and the entropy ratio of a
    flat original are undefined and reported as None. wall_time_ms is
    carried through from the caller (the CLI passes the measured enhance()
    time; standalone scoring leaves it 0).
    """
    if cfg is None:
        cfg = EnhanceConfig()
    if (orig.width, orig.height) != (enh.width, enh.height):
        raise SizeMismatchError(
            f"image sizes differ: {orig.width}x{orig.height} vs {enh.width}x{enh.height}"
        )
    irmle_orig = metrics.irmle(metrics.intensity_plane(orig))
    irmle_enh = metrics.irmle(metrics.intensity_plane(enh))
    irmle_ratio = irmle_enh / irmle_orig if irmle_orig > 0.0 else None
    try:
        cef_value = metrics.cef(orig, enh)
    except UndefinedMetricError:
        cef_value = None
    return MetricsReport(
        irmle_orig=irmle_orig,
        irmle_enh=irmle_enh,
        irmle_ratio=irmle_ratio,
        cef=cef_value,
        loe=metrics.loe(orig, enh, grid=cfg.loe_grid),
        psnr=metrics.psnr(orig, enh, plane=cfg.psnr_plane),
        ssim=metrics.ssim(orig, enh),
        wall_time_ms=wall_time_ms,
    )
