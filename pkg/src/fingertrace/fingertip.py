"""Wrist-to-finger intensity ramp and fingertip localisation on the cropped hand."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blobs import label_components
from .errors import NoForeground
from .geometry import Side, project, scan_axis
from .raster import BinaryMask, GrayImage

RampImage = GrayImage


@dataclass(frozen=True)
class Fingertip:
    x: int
    y: int
    ramp_value: int
    cluster_size: int


class VisitCounter:
    """Tally of pixels a stage reads; used to check the ramp stays inside the crop."""

    def __init__(self):
        self.count = 0

    def add(self, n: int) -> None:
        self.count += int(n)


def _wrist_to_finger(counts: np.ndarray, wrist_side: Side) -> np.ndarray:
    return counts[::-1] if wrist_side in (Side.BOTTOM, Side.RIGHT) else counts


def scanline_profile(mask: BinaryMask, wrist_side: Side) -> np.ndarray:
    """Foreground count per scan line, ordered from the wrist line to the finger line."""
    counts = project(mask, scan_axis(wrist_side)).counts
    return _wrist_to_finger(counts, wrist_side).copy()


def ramp_levels(extent: int) -> np.ndarray:
    """Ramp value of lines ``d = 1..extent`` from the wrist: round-half-up of d*255/extent.

    Floored at 1 so foreground never reads as background on extents above 510.
    """
    d = np.arange(1, extent + 1, dtype=np.int64)
    return np.maximum((2 * 255 * d + extent) // (2 * extent), 1).astype(np.uint8)


def intensity_ramp(mask: BinaryMask, wrist_side: Side, counter: VisitCounter | None = None) -> RampImage:
    """Encode each foreground pixel with its normalised distance from the wrist line.

    The extent counts every line of the crop along the scan axis, including
    empty ones, so the farthest line of the crop maps to exactly 255.
    """
    bits = mask.bits
    if counter is not None:
        counter.add(bits.size)
    if not bits.any():
        raise NoForeground("cannot ramp an empty crop")
    extent = bits.shape[0] if wrist_side.vertical else bits.shape[1]
    levels = _wrist_to_finger(ramp_levels(extent), wrist_side)
    line_values = levels[:, None] if wrist_side.vertical else levels[None, :]
    return GrayImage(np.where(bits, line_values, 0).astype(np.uint8))


def finger_edge_mask(ramp: RampImage, tip_threshold: int = 235) -> BinaryMask:
    if not 0 < tip_threshold <= 255:
        raise ValueError(f"tip_threshold must lie in (0, 255], got {tip_threshold}")
    return BinaryMask(ramp.values >= tip_threshold)


def _round_half_up(v: float) -> int:
    return int(math.floor(v + 0.5))


def locate_fingertips(
    candidates: BinaryMask,
    ramp: RampImage,
    wrist_side: Side,
    min_cluster: int = 2,
    min_separation: float = 8.0,
    max_tips: int = 5,
    offset: tuple[int, int] = (0, 0),
) -> list[Fingertip]:
    """One tip per 8-connected candidate cluster, at its highest-ramp pixel.

    When several pixels share the maximum the tip is their rounded centroid.
    Tips closer than ``min_separation`` across the scan axis collapse onto the
    one with the higher ramp value; at most ``max_tips`` survive. ``offset``
    is added to every coordinate (crop origin in the full frame).
    """
    labels, blobs = label_components(candidates, connectivity=8)
    values = ramp.values
    found = []
    for blob in blobs:
        if blob.area < min_cluster:
            continue
        x0, y0, x1, y1 = blob.bbox
        window = labels.labels[y0 : y1 + 1, x0 : x1 + 1] == blob.label
        ramp_win = np.where(window, values[y0 : y1 + 1, x0 : x1 + 1], 0)
        peak = int(ramp_win.max())
        ys, xs = np.nonzero(window & (ramp_win == peak))
        x = _round_half_up(xs.mean()) + x0 + offset[0]
        y = _round_half_up(ys.mean()) + y0 + offset[1]
        found.append(Fingertip(x, y, peak, blob.area))

    def cross(t: Fingertip) -> int:
        return t.x if wrist_side.vertical else t.y

    def along(t: Fingertip) -> int:
        return t.y if wrist_side.vertical else t.x

    found.sort(key=lambda t: (-t.ramp_value, -t.cluster_size, cross(t), along(t)))
    kept: list[Fingertip] = []
    for tip in found:
        if all(abs(cross(tip) - cross(k)) >= min_separation for k in kept):
            kept.append(tip)
    kept = kept[:max_tips]
    kept.sort(key=lambda t: (cross(t), along(t)))
    return kept
