"""Exception types raised by the wcenhance library.

Each failure mode callers are expected to distinguish gets its own class;
everything inherits from WcenhanceError so `except WcenhanceError` catches
all library-level failures without swallowing programming errors.
"""


class WcenhanceError(Exception):
    """Base class for all wcenhance errors."""


class UnreadableFileError(WcenhanceError):
    """The image file is missing or cannot be decoded."""


class UnsupportedFormatError(WcenhanceError):
    """The file decodes but is not a format we accept (PNG only)."""


class ZeroDimensionImageError(WcenhanceError):
    """The decoded image has a zero width or height."""


class UnwritablePathError(WcenhanceError):
    """The output path cannot be written."""


class SizeMismatchError(WcenhanceError):
    """Two planes or images that must share dimensions do not."""


class ImageTooSmallError(WcenhanceError):
    """The image is smaller than the analysis window requires."""


class UndefinedMetricError(WcenhanceError):
    """The metric has no defined value for this input (e.g. gray original)."""


class ConfigError(WcenhanceError):
    """Invalid configuration value, unknown key, or unparseable config file."""
