"""Direction-invariant fingertip detection from binary hand silhouettes."""

__version__ = "0.1.0"

from .config import RunConfig, load_config  # noqa: E402
from .geometry import CropRect, HandDirection, Side  # noqa: E402
from .pipeline import DetectionResult, detect  # noqa: E402
from .raster import BinaryMask, GrayImage, RgbImage, load_ppm, save_ppm  # noqa: E402

__all__ = [
    "BinaryMask",
    "CropRect",
    "DetectionResult",
    "GrayImage",
    "HandDirection",
    "RgbImage",
    "RunConfig",
    "Side",
    "detect",
    "load_config",
    "load_ppm",
    "save_ppm",
]
