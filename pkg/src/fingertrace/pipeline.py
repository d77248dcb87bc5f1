"""End-to-end fingertip detection on one RGB frame.

skin filter -> smoothing -> biggest BLOB -> 4-way wrist scan -> wrist cut
-> crop -> intensity ramp -> tip candidates -> fingertips
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import blobs, fingertip, geometry, skin
from .config import RunConfig
from .errors import NoCutFound
from .fingertip import Fingertip, VisitCounter
from .geometry import CropRect, HandDirection, Side
from .raster import RgbImage

STAGES = ("skin", "smooth", "blob", "direction", "cut", "crop", "ramp", "tips")


@dataclass
class StageTrace:
    """Per-stage wall times (ms) and the ramp stage's pixel-visit tally for one frame."""

    timings_ms: dict[str, float] = field(default_factory=dict)
    ramp_visits: VisitCounter = field(default_factory=VisitCounter)

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings_ms[name] = (time.perf_counter() - start) * 1000.0

    @property
    def total_ms(self) -> float:
        return sum(self.timings_ms.values())


@dataclass(frozen=True)
class DetectionResult:
    direction: HandDirection
    crop: CropRect
    tips: list[Fingertip]
    no_wrist_cut: bool = False

    @property
    def ambiguous_direction(self) -> bool:
        return self.direction.ambiguous

    def to_record(self, frame: str) -> dict:
        return {
            "frame": frame,
            "direction": self.direction.wrist_side.value,
            "ambiguous": self.direction.ambiguous,
            "no_wrist_cut": self.no_wrist_cut,
            "crop": self.crop.as_list(),
            "tips": [
                {"x": t.x, "y": t.y, "ramp": t.ramp_value, "cluster": t.cluster_size} for t in self.tips
            ],
        }

    @classmethod
    def from_record(cls, rec: dict) -> DetectionResult:
        xmin, ymin, xmax, ymax = rec["crop"]
        return cls(
            direction=HandDirection(Side(rec["direction"]), bool(rec.get("ambiguous", False))),
            crop=CropRect(xmin, xmax, ymin, ymax),
            tips=[Fingertip(t["x"], t["y"], t["ramp"], t["cluster"]) for t in rec["tips"]],
            no_wrist_cut=bool(rec.get("no_wrist_cut", False)),
        )


def hand_silhouette(frame: RgbImage, config: RunConfig, trace: StageTrace | None = None):
    """Skin filter, smoothing and biggest-BLOB selection."""
    trace = trace or StageTrace()
    with trace.stage("skin"):
        mask = skin.skin_mask(frame, config.band)
    with trace.stage("smooth"):
        mask = skin.smooth_mask(mask, config.smooth_kernel, config.smooth_cutoff)
    with trace.stage("blob"):
        hand, _ = blobs.largest_blob_mask(mask, config.connectivity)
    return hand


def detect(frame: RgbImage, config: RunConfig | None = None, trace: StageTrace | None = None) -> DetectionResult:
    config = config or RunConfig()
    trace = trace if trace is not None else StageTrace()
    hand = hand_silhouette(frame, config, trace)

    with trace.stage("direction"):
        direction, _ = geometry.detect_wrist_side(hand)
    side = direction.wrist_side
    with trace.stage("cut"):
        hist = geometry.project(hand, geometry.scan_axis(side))
        threshold = geometry.default_slope_threshold(hand, side, config.slope_threshold_factor)
        try:
            cut = geometry.find_wrist_cut(hist, side, threshold)
            no_cut = False
        except NoCutFound:
            cut = geometry.wrist_extreme(hand, side)
            no_cut = True
    with trace.stage("crop"):
        cropped, rect = geometry.crop_hand(hand, side, cut)
    with trace.stage("ramp"):
        ramp = fingertip.intensity_ramp(cropped, side, trace.ramp_visits)
    with trace.stage("tips"):
        candidates = fingertip.finger_edge_mask(ramp, config.tip_threshold)
        tips = fingertip.locate_fingertips(
            candidates,
            ramp,
            side,
            min_cluster=config.min_cluster,
            min_separation=config.min_separation_for(frame.width, frame.height),
            max_tips=config.max_tips,
            offset=(rect.xmin, rect.ymin),
        )
    return DetectionResult(direction, rect, tips, no_cut)


def diagnostics(frame: RgbImage, config: RunConfig | None = None) -> dict:
    """Scan-bar counts, both projection histograms and the cut, for plotting."""
    config = config or RunConfig()
    hand = hand_silhouette(frame, config)
    direction, counts = geometry.detect_wrist_side(hand)
    side = direction.wrist_side
    threshold = geometry.default_slope_threshold(hand, side, config.slope_threshold_factor)
    try:
        cut = geometry.find_wrist_cut(geometry.project(hand, geometry.scan_axis(side)), side, threshold)
    except NoCutFound:
        cut = None
    return {
        "width": frame.width,
        "height": frame.height,
        "direction": side.value,
        "ambiguous": direction.ambiguous,
        "scan_counts": {s.value: c for s, c in counts.items()},
        "slope_threshold": threshold,
        "wrist_cut": cut,
        "columns": geometry.project(hand, geometry.Axis.COLUMNS).counts.tolist(),
        "rows": geometry.project(hand, geometry.Axis.ROWS).counts.tolist(),
    }


def annotate(frame: RgbImage, result: DetectionResult, config: RunConfig | None = None) -> RgbImage:
    """Frame with the crop outlined and a 5x5 marker on every tip."""
    config = config or RunConfig()
    out = frame.pixels.copy()
    r = result.crop
    out[r.ymin, r.xmin : r.xmax + 1] = config.crop_color
    out[r.ymax, r.xmin : r.xmax + 1] = config.crop_color
    out[r.ymin : r.ymax + 1, r.xmin] = config.crop_color
    out[r.ymin : r.ymax + 1, r.xmax] = config.crop_color
    h, w = out.shape[:2]
    for t in result.tips:
        y0, y1 = max(t.y - 2, 0), min(t.y + 3, h)
        x0, x1 = max(t.x - 2, 0), min(t.x + 3, w)
        out[y0:y1, x0:x1] = config.marker_color
    return RgbImage(np.ascontiguousarray(out))
