"""Run configuration and its flat ``key = value`` file format."""
from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

from .skin import SkinBand

CONFIG_ENV = "FINGERTRACE_CONFIG"
# pixel-valued defaults are stated for a 640x480 frame and scale with the diagonal
REFERENCE_DIAGONAL = math.hypot(640, 480)

Color = tuple[int, int, int]


@dataclass(frozen=True)
class RunConfig:
    band: SkinBand = field(default_factory=SkinBand)
    smooth_kernel: int = 3
    smooth_cutoff: float = 0.5
    connectivity: int = 8
    slope_threshold_factor: float = 0.15
    tip_threshold: int = 235
    min_cluster: int = 2
    min_separation: float = 8.0
    max_tips: int = 5
    marker_color: Color = (0, 255, 0)
    crop_color: Color = (255, 255, 0)

    def __post_init__(self):
        if self.smooth_kernel < 1 or self.smooth_kernel % 2 == 0:
            raise ValueError("smooth_kernel must be odd and >= 1")
        if not 0.0 < self.smooth_cutoff < 1.0:
            raise ValueError("smooth_cutoff must lie in (0, 1)")
        if self.connectivity not in (4, 8):
            raise ValueError("connectivity must be 4 or 8")
        if self.slope_threshold_factor <= 0:
            raise ValueError("slope_threshold_factor must be positive")
        if not 0 < self.tip_threshold <= 255:
            raise ValueError("tip_threshold must lie in (0, 255]")
        if self.min_cluster < 1 or self.max_tips < 0 or self.min_separation < 0:
            raise ValueError("min_cluster >= 1, max_tips >= 0 and min_separation >= 0 required")
        for name in ("marker_color", "crop_color"):
            color = getattr(self, name)
            if len(color) != 3 or not all(0 <= c <= 255 for c in color):
                raise ValueError(f"{name} must be three bytes")

    def min_separation_for(self, width: int, height: int) -> float:
        return self.min_separation * math.hypot(width, height) / REFERENCE_DIAGONAL


_BAND_KEYS = {f"skin_{f.name}": f.name for f in dataclasses.fields(SkinBand)}
_PLAIN_KEYS = {f.name: f for f in dataclasses.fields(RunConfig) if f.name != "band"}
CONFIG_KEYS = tuple(_BAND_KEYS) + tuple(_PLAIN_KEYS)


def _parse_color(text: str) -> Color:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ValueError(f"color needs three components, got {text!r}")
    return tuple(int(p) for p in parts)


def _convert(key: str, text: str):
    if key in _BAND_KEYS:
        return float(text)
    kind = _PLAIN_KEYS[key].type
    if kind == "int":
        return int(text)
    if kind == "float":
        return float(text)
    return _parse_color(text)


def config_from_mapping(values: dict, base: RunConfig | None = None) -> RunConfig:
    """Overlay string or typed values onto ``base``; unknown keys raise ``KeyError``."""
    base = base or RunConfig()
    band_kw, plain_kw = {}, {}
    for key, raw in values.items():
        key = key.strip().replace("-", "_")
        if key not in CONFIG_KEYS:
            raise KeyError(f"unknown config key {key!r}")
        value = _convert(key, raw) if isinstance(raw, str) else raw
        if key in _BAND_KEYS:
            band_kw[_BAND_KEYS[key]] = value
        else:
            plain_kw[key] = tuple(value) if key.endswith("_color") else value
    band = dataclasses.replace(base.band, **band_kw)
    return dataclasses.replace(base, band=band, **plain_kw)


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return config_from_mapping(values, base)


def load_config(path=None) -> RunConfig:
    """Read ``path``, else the file named by $FINGERTRACE_CONFIG, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return RunConfig()
    return parse_config(Path(path).read_text())


def format_config(config: RunConfig) -> str:
    lines = [f"skin_{k} = {v:g}" for k, v in dataclasses.asdict(config.band).items()]
    for name in _PLAIN_KEYS:
        value = getattr(config, name)
        if isinstance(value, tuple):
            value = ",".join(str(c) for c in value)
        lines.append(f"{name} = {value}")
    return "\n".join(lines) + "\n"
