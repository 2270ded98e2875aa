"""PNG reader and writer.

Covers the subset this library stores: non-interlaced grayscale (8/16 bit),
truecolor (8/16 bit), and paletted images (1/2/4/8 bit indices). Alpha
color types, sub-8-bit grayscale, and Adam7 interlacing are rejected as
unsupported rather than corrupt. 8-bit samples are promoted to 16 bits by
the factor 257 at decode time.

The writer always emits 16-bit samples for grayscale and truecolor, and
8-bit indices plus an 8-bit PLTE for paletted images, with filter type 0 on
every scanline and a fixed zlib level, so encoding is deterministic.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from ..errors import CorruptFileError, UnsupportedFormatError
from ..images import Gray16Image, IndexedImage, TruecolorImage

SIGNATURE = b"\x89PNG\r\n\x1a\n"

_COLOR_GRAY = 0
_COLOR_RGB = 2
_COLOR_PALETTE = 3

_ZLIB_LEVEL = 6


def _chunk(kind: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(kind + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + kind + payload + struct.pack(">I", crc)


def _read_chunks(data: bytes):
    """Yield (kind, payload, offset) for each chunk, verifying CRCs."""
    pos = len(SIGNATURE)
    n = len(data)
    while pos < n:
        if pos + 8 > n:
            raise CorruptFileError("truncated chunk header", pos)
        (length,) = struct.unpack(">I", data[pos : pos + 4])
        kind = data[pos + 4 : pos + 8]
        end = pos + 8 + length
        if end + 4 > n:
            raise CorruptFileError(f"truncated {kind!r} chunk", pos)
        payload = data[pos + 8 : end]
        (crc,) = struct.unpack(">I", data[end : end + 4])
        if crc != (zlib.crc32(kind + payload) & 0xFFFFFFFF):
            raise CorruptFileError(f"CRC mismatch in {kind!r} chunk", pos)
        yield kind, payload, pos
        pos = end + 4
        if kind == b"IEND":
            return
    raise CorruptFileError("missing IEND chunk", n)


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa = abs(p - a)
    pb = abs(p - b)
    pc = abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def _unfilter(raw: bytes, height: int, stride: int, bpp: int, offset: int) -> bytearray:
    """Reverse per-scanline filtering. ``stride`` excludes the filter byte."""
    expected = height * (stride + 1)
    if len(raw) != expected:
        raise CorruptFileError(
            f"decompressed size {len(raw)} != expected {expected}", offset
        )
    out = bytearray(height * stride)
    prev_start = -1
    for y in range(height):
        fpos = y * (stride + 1)
        ftype = raw[fpos]
        line = bytearray(raw[fpos + 1 : fpos + 1 + stride])
        start = y * stride
        if ftype == 0:
            pass
        elif ftype == 1:  # Sub
            for i in range(bpp, stride):
                line[i] = (line[i] + line[i - bpp]) & 0xFF
        elif ftype == 2:  # Up
            if y > 0:
                for i in range(stride):
                    line[i] = (line[i] + out[prev_start + i]) & 0xFF
        elif ftype == 3:  # Average
            for i in range(stride):
                left = line[i - bpp] if i >= bpp else 0
                up = out[prev_start + i] if y > 0 else 0
                line[i] = (line[i] + ((left + up) >> 1)) & 0xFF
        elif ftype == 4:  # Paeth
            for i in range(stride):
                left = line[i - bpp] if i >= bpp else 0
                up = out[prev_start + i] if y > 0 else 0
                ul = out[prev_start + i - bpp] if (y > 0 and i >= bpp) else 0
                line[i] = (line[i] + _paeth(left, up, ul)) & 0xFF
        else:
            raise CorruptFileError(f"bad filter type {ftype} on row {y}", offset)
        out[start : start + stride] = line
        prev_start = start
    return out


def _unpack_indices(row: bytes, bitdepth: int, width: int) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(row, dtype=np.uint8))
    per = bitdepth
    usable = (len(bits) // per) * per
    groups = bits[:usable].reshape(-1, per)
    weights = 1 << np.arange(per - 1, -1, -1)
    values = (groups * weights).sum(axis=1)
    return values[:width]


def decode(data: bytes) -> Gray16Image | TruecolorImage | IndexedImage:
    ihdr = None
    idat = bytearray()
    idat_offset = None
    plte = None
    for kind, payload, offset in _read_chunks(data):
        if kind == b"IHDR":
            if len(payload) != 13:
                raise CorruptFileError("IHDR must be 13 bytes", offset)
            ihdr = struct.unpack(">IIBBBBB", payload)
        elif kind == b"PLTE":
            if len(payload) % 3 != 0 or len(payload) > 256 * 3:
                raise CorruptFileError("bad PLTE length", offset)
            plte = np.frombuffer(payload, dtype=np.uint8).reshape(-1, 3)
        elif kind == b"IDAT":
            if idat_offset is None:
                idat_offset = offset
            idat.extend(payload)
        # Ancillary chunks (tEXt, gAMA, tRNS, ...) are ignored.

    if ihdr is None:
        raise CorruptFileError("missing IHDR chunk", len(SIGNATURE))
    width, height, bitdepth, colortype, compression, filt, interlace = ihdr
    if width < 1 or height < 1:
        raise CorruptFileError(f"bad dimensions {width}x{height}", len(SIGNATURE))
    if compression != 0 or filt != 0:
        raise CorruptFileError("unknown compression/filter method", len(SIGNATURE))
    if interlace == 1:
        raise UnsupportedFormatError("interlaced PNG is not supported")
    if interlace != 0:
        raise CorruptFileError(f"bad interlace method {interlace}", len(SIGNATURE))
    if colortype in (4, 6):
        raise UnsupportedFormatError("PNG alpha color types are not supported")
    if colortype not in (_COLOR_GRAY, _COLOR_RGB, _COLOR_PALETTE):
        raise UnsupportedFormatError(f"PNG color type {colortype} is not supported")
    if colortype in (_COLOR_GRAY, _COLOR_RGB) and bitdepth not in (8, 16):
        raise UnsupportedFormatError(
            f"bit depth {bitdepth} for color type {colortype} is not supported"
        )
    if colortype == _COLOR_PALETTE and bitdepth not in (1, 2, 4, 8):
        raise CorruptFileError(f"bad palette bit depth {bitdepth}", len(SIGNATURE))

    if idat_offset is None:
        raise CorruptFileError("missing IDAT data", len(data))
    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise CorruptFileError(f"IDAT inflate failed: {exc}", idat_offset) from None

    channels = 3 if colortype == _COLOR_RGB else 1
    if colortype == _COLOR_PALETTE:
        stride = (width * bitdepth + 7) // 8
        bpp = 1
    else:
        bpp = channels * (bitdepth // 8)
        stride = width * bpp
    pixels = _unfilter(raw, height, stride, bpp, idat_offset)

    if colortype == _COLOR_PALETTE:
        if plte is None:
            raise CorruptFileError("paletted image without PLTE", idat_offset)
        rows = [
            _unpack_indices(bytes(pixels[y * stride : (y + 1) * stride]), bitdepth, width)
            for y in range(height)
        ]
        index0 = np.vstack(rows).astype(np.int32)
        if index0.max() >= plte.shape[0]:
            raise CorruptFileError("palette index out of range", idat_offset)
        # 8-bit palette channels promoted by 257, then normalized into [0, 1].
        cmap = plte.astype(np.float64) * 257.0 / 65535.0
        return IndexedImage(index0 + 1, cmap)

    dtype = np.dtype(">u2") if bitdepth == 16 else np.uint8
    arr = np.frombuffer(bytes(pixels), dtype=dtype)
    if bitdepth == 8:
        arr = arr.astype(np.uint16) * 257
    else:
        arr = arr.astype(np.uint16)
    if colortype == _COLOR_GRAY:
        return Gray16Image(arr.reshape(height, width))
    planes = arr.reshape(height, width, 3)
    return TruecolorImage(planes[:, :, 0], planes[:, :, 1], planes[:, :, 2])


def _encode_scanlines(rows: np.ndarray) -> bytes:
    """Prefix each row with filter type 0 and deflate the result."""
    height = rows.shape[0]
    stride = rows.shape[1]
    body = bytearray(height * (stride + 1))
    for y in range(height):
        body[y * (stride + 1)] = 0
        body[y * (stride + 1) + 1 : (y + 1) * (stride + 1)] = rows[y].tobytes()
    return zlib.compress(bytes(body), _ZLIB_LEVEL)


def _ihdr(width: int, height: int, bitdepth: int, colortype: int) -> bytes:
    return _chunk(
        b"IHDR",
        struct.pack(">IIBBBBB", width, height, bitdepth, colortype, 0, 0, 0),
    )


def encode_gray(img: Gray16Image) -> bytes:
    rows = img.samples.astype(">u2").view(np.uint8).reshape(img.height, -1)
    return (
        SIGNATURE
        + _ihdr(img.width, img.height, 16, _COLOR_GRAY)
        + _chunk(b"IDAT", _encode_scanlines(rows))
        + _chunk(b"IEND", b"")
    )


def encode_rgb(img: TruecolorImage) -> bytes:
    interleaved = np.stack([img.red, img.green, img.blue], axis=-1)
    rows = interleaved.astype(">u2").view(np.uint8).reshape(img.height, -1)
    return (
        SIGNATURE
        + _ihdr(img.width, img.height, 16, _COLOR_RGB)
        + _chunk(b"IDAT", _encode_scanlines(rows))
        + _chunk(b"IEND", b"")
    )


def encode_indexed(img: IndexedImage) -> bytes:
    n = img.map.shape[0]
    if n > 256:
        raise UnsupportedFormatError(
            f"paletted PNG holds at most 256 colors, image has {n}"
        )
    plte = np.rint(img.map * 255.0).astype(np.uint8).tobytes()
    rows = (img.index - 1).astype(np.uint8)
    return (
        SIGNATURE
        + _ihdr(img.width, img.height, 8, _COLOR_PALETTE)
        + _chunk(b"PLTE", plte)
        + _chunk(b"IDAT", _encode_scanlines(rows))
        + _chunk(b"IEND", b"")
    )
