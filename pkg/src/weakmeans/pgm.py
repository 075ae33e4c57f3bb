"""PGM (P2/P5) grayscale image reader/writer.

Intensities are stored internally as floats in [0, 1] (level / maxval) and
written back as round(v * maxval), so a read/write round trip is lossless at
the source maxval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class PgmError(ValueError):
    pass


@dataclass
class GrayImage:
    pixels: np.ndarray  # (height, width) float64 in [0, 1]
    maxval: int = 255

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=float)
        if self.pixels.ndim != 2 or self.pixels.size == 0:
            raise ValueError("pixels must be a non-empty 2-d array")
        if not 1 <= self.maxval <= 65535:
            raise ValueError("maxval must be in 1..65535")
        if np.any(self.pixels < 0) or np.any(self.pixels > 1):
            raise ValueError("intensities must lie in [0, 1]")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def _read_header_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated integer tokens, skipping # comments.
    Returns the tokens and the offset just past the single whitespace byte
    terminating the last token."""
    tokens: list[int] = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i : i + 1] == b"#":
            while i < n and data[i : i + 1] != b"\n":
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace():
            i += 1
        if start == i:
            raise PgmError("truncated header")
        try:
            tokens.append(int(data[start:i]))
        except ValueError as exc:
            raise PgmError(f"bad header token {data[start:i]!r}") from exc
    if i >= n:
        raise PgmError("truncated header")
    return tokens, i + 1  # skip the single whitespace after maxval


def read_pgm(data: bytes) -> GrayImage:
    if data[:2] not in (b"P2", b"P5"):
        raise PgmError(f"unsupported magic {data[:2]!r}")
    magic = data[:2]
    (width, height, maxval), offset = _read_header_tokens(data[2:], 3)
    offset += 2
    if width <= 0 or height <= 0:
        raise PgmError("non-positive image dimensions")
    if not 1 <= maxval <= 65535:
        raise PgmError(f"maxval {maxval} out of range 1..65535")
    count = width * height
    if magic == b"P2":
        fields = data[offset:].split()
        if len(fields) < count:
            raise PgmError("truncated P2 payload")
        try:
            levels = np.array([int(f) for f in fields[:count]], dtype=np.int64)
        except ValueError as exc:
            raise PgmError("non-integer P2 sample") from exc
    else:
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        nbytes = count * dtype.itemsize
        payload = data[offset : offset + nbytes]
        if len(payload) < nbytes:
            raise PgmError("truncated P5 payload")
        levels = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    if np.any(levels < 0) or np.any(levels > maxval):
        raise PgmError("sample value exceeds maxval")
    pixels = levels.reshape(height, width) / maxval
    return GrayImage(pixels=pixels, maxval=maxval)


def write_pgm(img: GrayImage, binary: bool = True) -> bytes:
    levels = np.rint(img.pixels * img.maxval).astype(np.int64)
    levels = np.clip(levels, 0, img.maxval)
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n{img.maxval}\n"
    if binary:
        dtype = np.dtype(">u2") if img.maxval > 255 else np.dtype("u1")
        return header.encode("ascii") + levels.astype(dtype).tobytes()
    body = "\n".join(" ".join(str(v) for v in row) for row in levels)
    return header.encode("ascii") + body.encode("ascii") + b"\n"
