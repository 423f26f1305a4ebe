"""Enhancement of dark, low-contrast capsule-endoscopy-style images.

Pipeline: HSI decomposition, intensity normalization, an adaptive
fraction-gamma transform driven by smoothed histogram statistics, Gaussian
low-pass unsharp masking, and gain-proportional saturation restoration with
robust outlier handling. Ships five objective pair metrics and a batch CLI.
"""

from .adaptive_gamma import (
    apply_fraction_gamma,
    build_histogram,
    GammaTransformResult,
    IntensityHistogram,
)
from .color_restore import minmax_map, restore_saturation, robust_map
from .color_space import (
    hsi_to_rgb,
    HsiImage,
    normalize_intensity,
    NormalizedIntensity,
    rgb_to_hsi,
)
from .config import EnhanceConfig, load_config
from .errors import (
    ConfigError,
    ImageTooSmallError,
    SizeMismatchError,
    UndefinedMetricError,
    UnreadableFileError,
    UnsupportedFormatError,
    UnwritablePathError,
    WcenhanceError,
    ZeroDimensionImageError,
)
from .image_io import load_image, RgbImage, save_image
from .metrics import (
    cef,
    colorfulness,
    irmle,
    local_entropy,
    loe,
    MetricsReport,
    psnr,
    ssim,
)
from .pipeline import DebugBundle, enhance, evaluate
from .unsharp import convolve, gaussian_kernel, GaussianKernel, unsharp_enhance

__version__ = "0.1.0"

__all__ = [
    "apply_fraction_gamma",
    "build_histogram",
    "GammaTransformResult",
    "IntensityHistogram",
    "minmax_map",
    "restore_saturation",
    "robust_map",
    "hsi_to_rgb",
    "HsiImage",
    "normalize_intensity",
    "NormalizedIntensity",
    "rgb_to_hsi",
    "EnhanceConfig",
    "load_config",
    "ConfigError",
    "ImageTooSmallError",
    "SizeMismatchError",
    "UndefinedMetricError",
    "UnreadableFileError",
    "UnsupportedFormatError",
    "UnwritablePathError",
    "WcenhanceError",
    "ZeroDimensionImageError",
    "load_image",
    "RgbImage",
    "save_image",
    "cef",
    "colorfulness",
    "irmle",
    "local_entropy",
    "loe",
    "MetricsReport",
    "psnr",
    "ssim",
    "DebugBundle",
    "enhance",
    "evaluate",
    "convolve",
    "gaussian_kernel",
    "GaussianKernel",
    "unsharp_enhance",
]
