"""Synthetic hand frames with known fingertip apexes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SpecUnsatisfiable
from .geometry import Side
from .raster import RgbImage, rotate_point
from .skin import SkinBand, rgb_to_hsv

# quarter turns (counterclockwise) taking the canonical bottom-wrist render to each side
_TURNS = {Side.BOTTOM: 0, Side.RIGHT: 1, Side.TOP: 2, Side.LEFT: 3}

SKIN_COLORS = ((220, 170, 140), (198, 140, 110), (235, 190, 160), (170, 110, 80), (210, 150, 120))
BACKGROUND_COLORS = ((40, 90, 160), (20, 20, 20), (60, 140, 70), (120, 120, 130), (230, 230, 240))


@dataclass(frozen=True)
class SyntheticHandSpec:
    frame_size: tuple[int, int] = (640, 480)
    wrist_side: Side = Side.BOTTOM
    finger_count: int = 5
    finger_length: tuple[int, int] = (95, 105)  # px from the knuckle line to the apex
    finger_width: tuple[int, int] = (19, 23)
    palm_width: int = 200
    palm_height: int = 160
    forearm_length: int = 120
    forearm_width: int | None = None  # defaults to 0.3 * palm_width
    cross_center: int | None = None  # hand centre across the scan axis; None = frame centre
    skin_color: tuple[int, int, int] = SKIN_COLORS[0]
    background_color: tuple[int, int, int] = BACKGROUND_COLORS[0]
    noise: float = 0.0
    seed: int = 0
    band: SkinBand = field(default_factory=SkinBand)

    def __post_init__(self):
        if not 1 <= self.finger_count <= 5:
            raise ValueError("finger_count must be 1..5")
        if not 0.0 <= self.noise <= 0.05:
            raise ValueError("noise must lie in [0, 0.05]")
        if self.finger_length[0] > self.finger_length[1] or self.finger_width[0] > self.finger_width[1]:
            raise ValueError("length/width ranges must be (lo, hi)")
        if self.finger_width[0] < 3:
            raise ValueError("fingers must be at least 3 px wide")
        if not self.band.contains(rgb_to_hsv(self.skin_color)):
            raise ValueError(f"skin_color {self.skin_color} falls outside the skin band")
        if self.band.contains(rgb_to_hsv(self.background_color)):
            raise ValueError(f"background_color {self.background_color} passes the skin band")

    @property
    def canvas_size(self) -> tuple[int, int]:
        """(width, height) of the upright render before rotation."""
        w, h = self.frame_size
        return (w, h) if self.wrist_side.vertical else (h, w)


@dataclass(frozen=True)
class GroundTruth:
    tips: list[tuple[int, int]]
    wrist_side: Side
    width: int = 640
    height: int = 480

    def to_record(self, frame: str) -> dict:
        return {
            "frame": frame,
            "width": self.width,
            "height": self.height,
            "wrist_side": self.wrist_side.value,
            "tips": [list(t) for t in self.tips],
        }

    @classmethod
    def from_record(cls, rec: dict) -> GroundTruth:
        return cls(
            tips=[tuple(t) for t in rec["tips"]],
            wrist_side=Side(rec["wrist_side"]),
            width=rec.get("width", 640),
            height=rec.get("height", 480),
        )


def _palm_half_width(t: np.ndarray, half: float) -> np.ndarray:
    """Palm outline: flares from 0.85 to 1.0 of ``half`` at 45% height, then tapers to 0.8."""
    low = 0.85 * half + 0.15 * half * t / 0.45
    high = half - 0.2 * half * (t - 0.45) / 0.55
    return np.where(t <= 0.45, low, high)


def render_silhouette(spec: SyntheticHandSpec) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Upright (wrist at bottom) boolean silhouette and apex pixels in canvas coordinates."""
    rng = np.random.default_rng(spec.seed)
    cw, ch = spec.canvas_size
    half = spec.palm_width / 2.0
    cx = cw // 2 if spec.cross_center is None else spec.cross_center
    if cx - half < 1 or cx + half > cw - 2:
        raise SpecUnsatisfiable("palm does not fit across the frame")
    if spec.forearm_length < 1:
        raise SpecUnsatisfiable("forearm must reach the frame edge")

    palm_bottom = ch - spec.forearm_length  # first forearm row
    palm_top = palm_bottom - spec.palm_height
    knuckle = palm_top + round(0.3 * spec.palm_height)
    if palm_top < 1:
        raise SpecUnsatisfiable("palm and forearm exceed the frame height")

    ys, xs = np.mgrid[0:ch, 0:cw]
    dx = np.abs(xs - cx)
    canvas = np.zeros((ch, cw), dtype=bool)

    fw = spec.forearm_width if spec.forearm_width is not None else round(0.3 * spec.palm_width)
    canvas[palm_bottom:, :] |= dx[palm_bottom:, :] <= fw // 2

    rows = slice(palm_top, palm_bottom)
    t = (palm_bottom - ys[rows]) / spec.palm_height
    canvas[rows] |= dx[rows] <= _palm_half_width(t, half)

    widest = spec.finger_width[1] | 1
    gap = max(6, round(0.45 * widest))
    pitch = widest + gap
    if 2 * pitch + widest // 2 > 0.9 * half:
        raise SpecUnsatisfiable("fingers do not fit on the palm")

    slots = np.sort(rng.choice(5, size=spec.finger_count, replace=False))
    apexes = []
    for slot in slots:
        length = int(rng.integers(spec.finger_length[0], spec.finger_length[1] + 1))
        width = int(rng.integers(spec.finger_width[0], spec.finger_width[1] + 1)) | 1
        r = width // 2
        xc = cx + (int(slot) - 2) * pitch
        apex = knuckle - length
        if apex < 1:
            raise SpecUnsatisfiable(f"finger of length {length} leaves the frame")
        cap_y = apex + r
        fy = slice(apex, knuckle + 1)
        ddx, ddy = xs[fy] - xc, ys[fy] - cap_y
        shaft = (ddy >= 0) & (np.abs(ddx) <= r)
        cap = (ddy < 0) & (ddx * ddx + ddy * ddy <= r * (r + 1))
        canvas[fy] |= shaft | cap
        apexes.append((xc, apex))
    return canvas, apexes


def generate_hand(spec: SyntheticHandSpec) -> tuple[RgbImage, GroundTruth]:
    canvas, apexes = render_silhouette(spec)
    k = _TURNS[spec.wrist_side]
    cw, ch = spec.canvas_size
    silhouette = np.rot90(canvas, k)
    tips = [rotate_point(x, y, cw, ch, k) for x, y in apexes]

    pixels = np.empty(silhouette.shape + (3,), dtype=np.uint8)
    pixels[...] = spec.background_color
    pixels[silhouette] = spec.skin_color
    if spec.noise > 0:
        rng = np.random.default_rng([spec.seed, 1])
        flip = rng.random(silhouette.shape) < spec.noise
        pixels[flip & silhouette] = spec.background_color
        pixels[flip & ~silhouette] = spec.skin_color

    w, h = spec.frame_size
    tips.sort()
    return RgbImage(pixels), GroundTruth(tips, spec.wrist_side, w, h)


def corpus_specs(count: int, seed: int = 0, frame_size=(640, 480), noise: float = 0.0) -> list[SyntheticHandSpec]:
    """Varied hands cycling through all wrist sides and finger counts 1..5."""
    sides = (Side.BOTTOM, Side.RIGHT, Side.TOP, Side.LEFT)
    specs = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        side = sides[i % 4]
        fingers = 1 + (i // 4) % 5
        w, h = frame_size
        cw, ch = (w, h) if side.vertical else (h, w)
        scale = math.hypot(w, h) / math.hypot(640, 480)

        palm_w = int(rng.integers(round(190 * scale), round(240 * scale) + 1))
        palm_h = int(round(palm_w * rng.uniform(0.75, 0.85)))
        length = int(round(palm_w * rng.uniform(0.5, 0.58)))
        spread = max(1, round(0.06 * length))
        width_lo = max(3, round(palm_w * 0.085))
        knuckle_drop = round(0.3 * palm_h)
        room = ch - palm_h - (length - knuckle_drop) - 3
        fore_lo = max(round(0.15 * ch), 1)
        forearm = int(rng.integers(fore_lo, max(fore_lo, min(round(0.4 * ch), room)) + 1))
        margin = palm_w // 2 + 2
        center = int(rng.integers(margin, cw - margin))

        specs.append(
            SyntheticHandSpec(
                frame_size=frame_size,
                wrist_side=side,
                finger_count=fingers,
                finger_length=(length - spread, length),
                finger_width=(width_lo, width_lo + max(2, round(4 * scale))),
                palm_width=palm_w,
                palm_height=palm_h,
                forearm_length=forearm,
                cross_center=center,
                skin_color=SKIN_COLORS[int(rng.integers(len(SKIN_COLORS)))],
                background_color=BACKGROUND_COLORS[int(rng.integers(len(BACKGROUND_COLORS)))],
                noise=noise,
                seed=int(rng.integers(2**31)),
            )
        )
    return specs


def spec_from_dict(d: dict) -> SyntheticHandSpec:
    """Build a spec from JSON-style values (lists for pairs, side names as strings)."""
    d = dict(d)
    if "wrist_side" in d:
        d["wrist_side"] = Side(d["wrist_side"])
    if "band" in d:
        d["band"] = SkinBand(**d["band"])
    for key in ("frame_size", "finger_length", "finger_width", "skin_color", "background_color"):
        if key in d:
            d[key] = tuple(d[key])
    return SyntheticHandSpec(**d)
