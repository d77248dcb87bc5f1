"""HSV skin filtering and averaging-filter smoothing of the silhouette."""
from __future__ import annotations

import colorsys
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import BadKernel
from .raster import BinaryMask, RgbImage


@dataclass(frozen=True)
class HsvPixel:
    h: float  # degrees, [0, 360)
    s: float  # [0, 1]
    v: float  # [0, 1]


@dataclass(frozen=True)
class SkinBand:
    """Accepted HSV box. ``h_lo > h_hi`` means the hue interval wraps through 0 degrees."""

    h_lo: float = 0.0
    h_hi: float = 50.0
    s_lo: float = 0.23
    s_hi: float = 0.68
    v_lo: float = 0.35
    v_hi: float = 1.0

    def __post_init__(self):
        for name in ("h_lo", "h_hi"):
            if not 0.0 <= getattr(self, name) <= 360.0:
                raise ValueError(f"{name} must lie in [0, 360]")
        for name in ("s_lo", "s_hi", "v_lo", "v_hi"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.s_lo > self.s_hi or self.v_lo > self.v_hi:
            raise ValueError("band lower bounds must not exceed upper bounds")

    def contains(self, p: HsvPixel) -> bool:
        if self.h_lo <= self.h_hi:
            h_ok = self.h_lo <= p.h <= self.h_hi
        else:
            h_ok = p.h >= self.h_lo or p.h <= self.h_hi
        return h_ok and self.s_lo <= p.s <= self.s_hi and self.v_lo <= p.v <= self.v_hi


def rgb_to_hsv(p) -> HsvPixel:
    r, g, b = (int(c) / 255.0 for c in p)
    h, s, v = colorsys.rgb_to_hsv(r, g, b)
    return HsvPixel(h * 360.0, s, v)


def _hue(r: np.ndarray, g: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hue in degrees for float channels in [0, 1]; same arithmetic as :mod:`colorsys`."""
    maxc = np.maximum(np.maximum(r, g), b)
    minc = np.minimum(np.minimum(r, g), b)
    rangec = maxc - minc
    gray = rangec == 0
    safe_range = np.where(gray, 1.0, rangec)
    rc = (maxc - r) / safe_range
    gc = (maxc - g) / safe_range
    bc = (maxc - b) / safe_range
    h = np.where(r == maxc, bc - gc, np.where(g == maxc, 2.0 + rc - bc, 4.0 + gc - rc))
    return np.where(gray, 0.0, (h / 6.0) % 1.0) * 360.0


def _saturation_table() -> np.ndarray:
    """``table[max, min]`` = saturation of any pixel with those byte extremes."""
    hi = np.arange(256, dtype=np.float64)[:, None] / 255.0
    lo = np.arange(256, dtype=np.float64)[None, :] / 255.0
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (hi - lo) / hi
    return np.where(hi == lo, 0.0, np.nan_to_num(s))


_S_TABLE = _saturation_table()
_V_TABLE = np.arange(256, dtype=np.float64) / 255.0


def hsv_planes(img: RgbImage) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised hexcone conversion of a whole frame, matching :func:`rgb_to_hsv`."""
    px = img.pixels
    maxc = px.max(axis=2)
    minc = px.min(axis=2)
    rgb = px.astype(np.float64) / 255.0
    h = _hue(rgb[..., 0], rgb[..., 1], rgb[..., 2])
    return h, _S_TABLE[maxc, minc], _V_TABLE[maxc]


def _in_hue(h: np.ndarray, band: SkinBand) -> np.ndarray:
    if band.h_lo <= band.h_hi:
        return (h >= band.h_lo) & (h <= band.h_hi)
    return (h >= band.h_lo) | (h <= band.h_hi)


def skin_mask(img: RgbImage, band: SkinBand) -> BinaryMask:
    """Pixels whose HSV value lies inside ``band``.

    Saturation and value depend only on the byte extremes, so they are
    tested through exact lookup tables; hue is computed only for pixels that
    survive those tests.
    """
    px = np.ascontiguousarray(img.pixels)
    r, g, b = px[..., 0], px[..., 1], px[..., 2]
    maxc = np.maximum(np.maximum(r, g), b)
    minc = np.minimum(np.minimum(r, g), b)
    v_ok = (_V_TABLE >= band.v_lo) & (_V_TABLE <= band.v_hi)
    s_ok = ((_S_TABLE >= band.s_lo) & (_S_TABLE <= band.s_hi)).ravel()
    bits = v_ok[maxc] & s_ok[(maxc.astype(np.intp) << 8) | minc]
    idx = np.flatnonzero(bits)
    if idx.size:
        cand = px.reshape(-1, 3)[idx].astype(np.float64) / 255.0
        keep = _in_hue(_hue(cand[:, 0], cand[:, 1], cand[:, 2]), band)
        bits.reshape(-1)[idx[~keep]] = False
    return BinaryMask(bits)


def box_sums(bits: np.ndarray, kernel: int) -> np.ndarray:
    """Integer k x k neighbourhood sums with edge replication at the border."""
    ones = np.ones(kernel, dtype=np.int32)
    rows = ndimage.correlate1d(bits.astype(np.int32), ones, axis=0, mode="nearest")
    return ndimage.correlate1d(rows, ones, axis=1, mode="nearest")


def smooth_mask(mask: BinaryMask, kernel: int = 3, cutoff: float = 0.5) -> BinaryMask:
    """Averaging filter followed by re-binarisation at ``cutoff``."""
    if kernel < 1 or kernel % 2 == 0:
        raise BadKernel(f"kernel must be odd and >= 1, got {kernel}")
    if not 0.0 < cutoff < 1.0:
        raise ValueError(f"cutoff must lie in (0, 1), got {cutoff}")
    if kernel == 1:
        return mask
    sums = box_sums(mask.bits, kernel)
    return BinaryMask(sums >= cutoff * kernel * kernel)
