"""Projection histograms, wrist-side detection, wrist cut and hand cropping.

Coordinates: x is the column index, y the row index, origin top-left.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptyCrop, NoCutFound, NoForeground, VerticalSegment
from .raster import BinaryMask


class Axis(enum.Enum):
    COLUMNS = "columns"  # one count per column (H_x)
    ROWS = "rows"  # one count per row (H_y)


class Side(enum.Enum):
    BOTTOM = "bottom"
    TOP = "top"
    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> Side:
        return _OPPOSITE[self]

    @property
    def vertical(self) -> bool:
        """True when the scan runs along rows (wrist at top or bottom)."""
        return self in (Side.TOP, Side.BOTTOM)

    def rotated(self, k: int = 1) -> Side:
        """Where this frame edge ends up after ``k`` counterclockwise quarter turns."""
        side = self
        for _ in range(k % 4):
            side = _CCW[side]
        return side


_OPPOSITE = {Side.BOTTOM: Side.TOP, Side.TOP: Side.BOTTOM, Side.LEFT: Side.RIGHT, Side.RIGHT: Side.LEFT}
_CCW = {Side.BOTTOM: Side.RIGHT, Side.RIGHT: Side.TOP, Side.TOP: Side.LEFT, Side.LEFT: Side.BOTTOM}
# order used to break equal boundary counts
TIE_ORDER = (Side.BOTTOM, Side.TOP, Side.LEFT, Side.RIGHT)


@dataclass(frozen=True)
class HandDirection:
    wrist_side: Side
    ambiguous: bool = False

    @property
    def finger_side(self) -> Side:
        return self.wrist_side.opposite


@dataclass(frozen=True, eq=False)
class ProjectionHistogram:
    axis: Axis
    counts: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, ProjectionHistogram):
            return NotImplemented
        return self.axis == other.axis and np.array_equal(self.counts, other.counts)


@dataclass(frozen=True)
class CropRect:
    xmin: int
    xmax: int
    ymin: int
    ymax: int

    @property
    def width(self) -> int:
        return self.xmax - self.xmin + 1

    @property
    def height(self) -> int:
        return self.ymax - self.ymin + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def as_list(self) -> list[int]:
        return [self.xmin, self.ymin, self.xmax, self.ymax]


def project(mask: BinaryMask, axis: Axis) -> ProjectionHistogram:
    # sum over rows gives one value per column and vice versa
    counts = mask.bits.sum(axis=0 if axis is Axis.COLUMNS else 1, dtype=np.int64)
    return ProjectionHistogram(axis, counts)


def scan_axis(wrist_side: Side) -> Axis:
    """Histogram axis that runs from the wrist toward the fingers."""
    return Axis.ROWS if wrist_side.vertical else Axis.COLUMNS


def boundary_counts(mask: BinaryMask) -> dict[Side, int]:
    """On-pixel count of the first occupied line met when scanning in from each side."""
    rows = np.flatnonzero(mask.bits.any(axis=1))
    cols = np.flatnonzero(mask.bits.any(axis=0))
    if rows.size == 0:
        raise NoForeground("cannot scan an empty silhouette")
    bits = mask.bits
    return {
        Side.BOTTOM: int(bits[rows[-1]].sum()),
        Side.TOP: int(bits[rows[0]].sum()),
        Side.LEFT: int(bits[:, cols[0]].sum()),
        Side.RIGHT: int(bits[:, cols[-1]].sum()),
    }


def detect_wrist_side(mask: BinaryMask) -> tuple[HandDirection, dict[Side, int]]:
    """4-way scan: the widest first-contact line is where the arm enters the frame."""
    counts = boundary_counts(mask)
    ranked = sorted(TIE_ORDER, key=lambda s: -counts[s])  # stable, keeps tie order
    ambiguous = counts[ranked[0]] == counts[ranked[1]]
    return HandDirection(ranked[0], ambiguous), counts


def slope(p1, p2) -> float:
    (x1, y1), (x2, y2) = p1, p2
    if x1 == x2:
        raise VerticalSegment(f"x1 == x2 == {x1}")
    return (y2 - y1) / (x2 - x1)


def default_slope_threshold(mask: BinaryMask, wrist_side: Side, factor: float = 0.15) -> float:
    """``factor`` times the largest possible count of the wrist-scan histogram."""
    return factor * (mask.width if wrist_side.vertical else mask.height)


def _wrist_first(counts: np.ndarray, wrist_side: Side) -> np.ndarray:
    """Histogram reordered so index 0 is the wrist-side end."""
    return counts[::-1] if wrist_side in (Side.BOTTOM, Side.RIGHT) else counts


def _from_wrist_index(i: int, n: int, wrist_side: Side) -> int:
    return n - 1 - i if wrist_side in (Side.BOTTOM, Side.RIGHT) else i


def find_wrist_cut(hist: ProjectionHistogram, wrist_side: Side | HandDirection, slope_threshold: float) -> int:
    """Index of the last line before the histogram starts climbing steeply.

    Scans from the wrist-side end, starting at the first nonzero bin, and
    returns the first index whose forward difference (unit step, so the
    difference is the slope) exceeds ``slope_threshold``.
    """
    if isinstance(wrist_side, HandDirection):
        wrist_side = wrist_side.wrist_side
    if hist.axis is not scan_axis(wrist_side):
        raise ValueError(f"wrist {wrist_side.value} needs a {scan_axis(wrist_side).value} histogram")
    if slope_threshold <= 0:
        raise ValueError("slope_threshold must be positive")
    seq = _wrist_first(np.asarray(hist.counts, dtype=np.int64), wrist_side)
    nonzero = np.flatnonzero(seq)
    if nonzero.size == 0:
        raise NoCutFound("histogram is empty")
    start = nonzero[0]
    rises = np.flatnonzero(np.diff(seq[start:]) > slope_threshold)
    if rises.size == 0:
        raise NoCutFound(f"no step above {slope_threshold:g}")
    return _from_wrist_index(int(start + rises[0]), len(seq), wrist_side)


def wrist_extreme(mask: BinaryMask, wrist_side: Side) -> int:
    """Index of the outermost occupied line on the wrist side."""
    counts = project(mask, scan_axis(wrist_side)).counts
    occupied = np.flatnonzero(counts)
    if occupied.size == 0:
        raise NoForeground("empty silhouette")
    return int(occupied[-1] if wrist_side in (Side.BOTTOM, Side.RIGHT) else occupied[0])


def crop_hand(mask: BinaryMask, wrist_side: Side | HandDirection, cut_index: int) -> tuple[BinaryMask, CropRect]:
    """Cut the forearm off at ``cut_index`` and crop to the remaining hand.

    The cut line itself is kept. The three other bounds are the outermost
    occupied lines on the finger side of the cut.
    """
    if isinstance(wrist_side, HandDirection):
        wrist_side = wrist_side.wrist_side
    bits = mask.bits
    extent = mask.height if wrist_side.vertical else mask.width
    if not 0 <= cut_index < extent:
        raise ValueError(f"cut_index {cut_index} outside [0, {extent})")

    keep = np.zeros_like(bits)
    if wrist_side is Side.BOTTOM:
        keep[: cut_index + 1] = bits[: cut_index + 1]
    elif wrist_side is Side.TOP:
        keep[cut_index:] = bits[cut_index:]
    elif wrist_side is Side.RIGHT:
        keep[:, : cut_index + 1] = bits[:, : cut_index + 1]
    else:
        keep[:, cut_index:] = bits[:, cut_index:]

    rows = np.flatnonzero(keep.any(axis=1))
    cols = np.flatnonzero(keep.any(axis=0))
    if rows.size == 0:
        raise EmptyCrop(f"no foreground on the finger side of cut {cut_index}")
    rect = CropRect(int(cols[0]), int(cols[-1]), int(rows[0]), int(rows[-1]))
    # the wrist bound is the cut line even if that line is empty
    if wrist_side is Side.BOTTOM:
        rect = CropRect(rect.xmin, rect.xmax, rect.ymin, cut_index)
    elif wrist_side is Side.TOP:
        rect = CropRect(rect.xmin, rect.xmax, cut_index, rect.ymax)
    elif wrist_side is Side.RIGHT:
        rect = CropRect(rect.xmin, cut_index, rect.ymin, rect.ymax)
    else:
        rect = CropRect(cut_index, rect.xmax, rect.ymin, rect.ymax)
    sub = bits[rect.ymin : rect.ymax + 1, rect.xmin : rect.xmax + 1]
    return BinaryMask(sub), rect
