"""Connected-component labelling and biggest-BLOB extraction."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import NoForeground
from .raster import BinaryMask

_STRUCTURES = {
    4: ndimage.generate_binary_structure(2, 1),
    8: ndimage.generate_binary_structure(2, 2),
}


@dataclass(frozen=True)
class Blob:
    label: int
    area: int
    bbox: tuple[int, int, int, int]  # xmin, ymin, xmax, ymax, inclusive


@dataclass(frozen=True, eq=False)
class LabelMap:
    labels: np.ndarray  # (height, width) int32, 0 = background

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]


def _raster_ordered(raw: np.ndarray, n: int) -> np.ndarray:
    """Renumber labels so they increase with each component's first raster pixel."""
    flat = raw.ravel()
    running = np.maximum.accumulate(flat)
    if np.all(np.diff(running, prepend=0) <= 1):  # new labels already appear as 1, 2, 3, ...
        return raw.astype(np.int32, copy=False)
    fg = np.flatnonzero(flat)
    _, first = np.unique(flat[fg], return_index=True)
    order = np.argsort(fg[first], kind="stable")
    remap = np.zeros(n + 1, dtype=np.int32)
    remap[order + 1] = np.arange(1, n + 1, dtype=np.int32)
    return remap[raw]


def label_components(mask: BinaryMask, connectivity: int = 8) -> tuple[LabelMap, list[Blob]]:
    """Label foreground components.

    Labels are dense ``1..k`` and numbered in row-major order of each
    component's first pixel. Blobs come back sorted by descending area; equal
    areas keep label order, so the earliest component wins ties.
    """
    if connectivity not in _STRUCTURES:
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    raw, n = ndimage.label(mask.bits, structure=_STRUCTURES[connectivity])
    if n == 0:
        return LabelMap(np.zeros(mask.bits.shape, dtype=np.int32)), []

    labels = _raster_ordered(raw, n)
    labels.setflags(write=False)

    areas = np.bincount(labels.ravel(), minlength=n + 1)
    blobs = []
    for i, sl in enumerate(ndimage.find_objects(labels), start=1):
        ys, xs = sl
        blobs.append(Blob(i, int(areas[i]), (xs.start, ys.start, xs.stop - 1, ys.stop - 1)))
    blobs.sort(key=lambda b: (-b.area, b.label))
    return LabelMap(labels), blobs


def largest_blob_mask(mask: BinaryMask, connectivity: int = 8) -> tuple[BinaryMask, Blob]:
    labels, blobs = label_components(mask, connectivity)
    if not blobs:
        raise NoForeground("silhouette is empty")
    best = blobs[0]
    return BinaryMask(labels.labels == best.label), best
