"""Netpbm (PGM/PPM) reader and writer.

Reads the ASCII (P2/P3) and binary (P5/P6) grayscale and RGB variants; the
bitmap forms P1/P4 are not supported. Samples are rescaled to the 16-bit
range at decode time: ``round(v * 65535 / maxval)``, which is the exact
factor 257 for 8-bit files and the identity for maxval 65535.

Writing always emits the binary form with maxval 65535 and big-endian
sample order.
"""

from __future__ import annotations

import numpy as np

from ..errors import CorruptFileError
from ..images import Gray16Image, TruecolorImage

_MAGICS = {b"P2": ("gray", False), b"P3": ("rgb", False),
           b"P5": ("gray", True), b"P6": ("rgb", True)}

_WHITESPACE = b" \t\r\n\x0b\x0c"


class _Tokenizer:
    """Pulls whitespace-separated header tokens, skipping # comments."""

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def _skip_separators(self) -> None:
        data = self.data
        n = len(data)
        while self.pos < n:
            c = data[self.pos : self.pos + 1]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == b"#":
                while self.pos < n and data[self.pos : self.pos + 1] != b"\n":
                    self.pos += 1
            else:
                return

    def next_int(self, what: str) -> int:
        self._skip_separators()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos : self.pos + 1] not in _WHITESPACE:
            if data[self.pos : self.pos + 1] == b"#":
                break
            self.pos += 1
        token = data[start : self.pos]
        if not token:
            raise CorruptFileError(f"missing {what} in header", start)
        try:
            value = int(token)
        except ValueError:
            raise CorruptFileError(f"bad {what} {token!r} in header", start) from None
        return value


def decode(data: bytes) -> Gray16Image | TruecolorImage:
    magic = data[:2]
    kind, binary = _MAGICS[magic]
    tok = _Tokenizer(data, 2)
    width = tok.next_int("width")
    height = tok.next_int("height")
    maxval = tok.next_int("maxval")
    if width < 1 or height < 1:
        raise CorruptFileError(f"bad dimensions {width}x{height}", 2)
    if not 1 <= maxval <= 65535:
        raise CorruptFileError(f"maxval {maxval} out of range [1, 65535]", 2)

    channels = 1 if kind == "gray" else 3
    count = width * height * channels
    if binary:
        # After maxval exactly one whitespace byte precedes the raster.
        pos = tok.pos
        if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
            raise CorruptFileError("missing whitespace before raster", pos)
        pos += 1
        itemsize = 1 if maxval <= 255 else 2
        need = count * itemsize
        raster = data[pos : pos + need]
        if len(raster) < need:
            raise CorruptFileError(
                f"raster truncated: need {need} bytes, have {len(raster)}",
                pos + len(raster),
            )
        dtype = np.uint8 if itemsize == 1 else np.dtype(">u2")
        values = np.frombuffer(raster, dtype=dtype).astype(np.int64)
        if itemsize == 2 and values.max(initial=0) > maxval:
            raise CorruptFileError(f"sample exceeds maxval {maxval}", pos)
        if itemsize == 1 and maxval < 255 and values.max(initial=0) > maxval:
            raise CorruptFileError(f"sample exceeds maxval {maxval}", pos)
    else:
        values = np.empty(count, dtype=np.int64)
        for i in range(count):
            v = tok.next_int("sample")
            if v < 0 or v > maxval:
                raise CorruptFileError(f"sample {v} exceeds maxval {maxval}", tok.pos)
            values[i] = v

    # v * 65535 is exact in float64 (< 2**53); one rounding in the divide.
    scaled = np.rint(values * 65535.0 / maxval).astype(np.uint16)
    if channels == 1:
        return Gray16Image(scaled.reshape(height, width))
    planes = scaled.reshape(height, width, 3)
    return TruecolorImage(planes[:, :, 0], planes[:, :, 1], planes[:, :, 2])


def encode_gray(img: Gray16Image) -> bytes:
    header = f"P5\n{img.width} {img.height}\n65535\n".encode("ascii")
    return header + img.samples.astype(">u2").tobytes()


def encode_rgb(img: TruecolorImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n65535\n".encode("ascii")
    planes = np.stack([img.red, img.green, img.blue], axis=-1)
    return header + planes.astype(">u2").tobytes()
