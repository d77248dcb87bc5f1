"""Raster containers and binary PPM/PGM codecs.

Images wrap read-only numpy arrays indexed ``[y, x]`` (row-major, origin
top-left). Only 8-bit binary Netpbm is supported: P6 for RGB, P5 for gray
and for masks (stored as 0/255).
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MalformedHeader, TruncatedPixelData, UnsupportedMaxval

_WHITESPACE = b" \t\n\r\v\f"


def _frozen(arr: np.ndarray, dtype, ndim: int, name: str) -> np.ndarray:
    arr = np.array(arr, dtype=dtype, copy=True, order="C")
    if arr.ndim != ndim:
        raise ValueError(f"{name} must have {ndim} dimensions, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RgbImage:
    pixels: np.ndarray  # (height, width, 3) uint8

    def __post_init__(self):
        arr = _frozen(self.pixels, np.uint8, 3, "RgbImage")
        if arr.shape[2] != 3:
            raise ValueError(f"RgbImage needs 3 channels, got shape {arr.shape}")
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def rotate(self, k: int = 1) -> RgbImage:
        """Rotate by ``k`` quarter turns counterclockwise."""
        return RgbImage(np.rot90(self.pixels, k))

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class GrayImage:
    values: np.ndarray  # (height, width) uint8

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, np.uint8, 2, "GrayImage"))

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    def rotate(self, k: int = 1) -> GrayImage:
        return GrayImage(np.rot90(self.values, k))

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class BinaryMask:
    bits: np.ndarray  # (height, width) bool

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.dtype != np.bool_ and bits.size and not np.isin(bits, (0, 1)).all():
            raise ValueError("BinaryMask values must be 0 or 1")
        object.__setattr__(self, "bits", _frozen(bits, np.bool_, 2, "BinaryMask"))

    @classmethod
    def zeros(cls, width: int, height: int) -> BinaryMask:
        return cls(np.zeros((height, width), dtype=bool))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def rotate(self, k: int = 1) -> BinaryMask:
        return BinaryMask(np.rot90(self.bits, k))

    def __eq__(self, other):
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)


def rotate_point(x: int, y: int, width: int, height: int, k: int = 1) -> tuple[int, int]:
    """Map pixel (x, y) of a width x height frame through ``k`` counterclockwise quarter turns."""
    for _ in range(k % 4):
        x, y = y, width - 1 - x
        width, height = height, width
    return x, y


# -- Netpbm codecs ---------------------------------------------------------


def _parse_header(data: bytes, magic: bytes) -> tuple[int, int, int]:
    """Return (width, height, offset of pixel data)."""
    if data[:2] != magic:
        raise MalformedHeader(f"expected magic {magic!r}, got {data[:2]!r}")
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(data):
            raise MalformedHeader("header ends before width/height/maxval")
        c = data[pos : pos + 1]
        if c[0] in _WHITESPACE:
            pos += 1
            continue
        if c == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise MalformedHeader("unterminated comment in header")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos : pos + 1] != b"#":
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise MalformedHeader(f"non-numeric header field {token!r}")
        fields.append(int(token))
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace after maxval")
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedHeader(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval} (only 255 is supported)")
    return width, height, pos + 1


def _read_payload(data: bytes, magic: bytes, channels: int) -> np.ndarray:
    width, height, offset = _parse_header(data, magic)
    need = width * height * channels
    payload = data[offset : offset + need]
    if len(payload) < need:
        raise TruncatedPixelData(f"expected {need} bytes of pixel data, got {len(payload)}")
    arr = np.frombuffer(payload, dtype=np.uint8)
    shape = (height, width, channels) if channels > 1 else (height, width)
    return arr.reshape(shape)


def read_ppm(data: bytes) -> RgbImage:
    return RgbImage(_read_payload(data, b"P6", 3))


def write_ppm(img: RgbImage) -> bytes:
    return b"P6 %d %d 255\n" % (img.width, img.height) + img.pixels.tobytes()


def read_pgm(data: bytes) -> GrayImage:
    return GrayImage(_read_payload(data, b"P5", 1))


def write_pgm(img: GrayImage | BinaryMask) -> bytes:
    if isinstance(img, BinaryMask):
        values = img.bits.astype(np.uint8) * 255
    else:
        values = img.values
    return b"P5 %d %d 255\n" % (values.shape[1], values.shape[0]) + values.tobytes()


def read_mask(data: bytes) -> BinaryMask:
    """Decode a P5 file as a mask; any nonzero value is foreground."""
    return BinaryMask(read_pgm(data).values > 0)


def load_ppm(path) -> RgbImage:
    return read_ppm(Path(path).read_bytes())


def save_ppm(path, img: RgbImage) -> None:
    Path(path).write_bytes(write_ppm(img))


def load_pgm(path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img: GrayImage | BinaryMask) -> None:
    Path(path).write_bytes(write_pgm(img))
