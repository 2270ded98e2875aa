"""Image file input and output.

Two families are supported, detected from the leading magic bytes and
never from the file name: PNG and netpbm (PGM/PPM). Everything decodes
into one of three payloads -- 16-bit grayscale, 16-bit truecolor, or an
indexed image with a real-valued colormap. Encoding 16-bit grayscale and
truecolor data roundtrips bit-exactly through both families.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .. import core
from ..errors import CodecError, CorruptFileError, UnsupportedFormatError
from ..images import Gray16Image, IndexedImage, RealImage, TruecolorImage
from . import _png, _pnm

Payload = Union[Gray16Image, TruecolorImage, IndexedImage]

_KINDS = {Gray16Image: "gray", TruecolorImage: "truecolor", IndexedImage: "indexed"}


@dataclass(frozen=True)
class DecodedImage:
    """A decoded file: the payload plus its variant tag."""

    payload: Payload

    def __post_init__(self):
        if type(self.payload) not in _KINDS:
            raise TypeError(f"unsupported payload type {type(self.payload)!r}")

    @property
    def kind(self) -> str:
        return _KINDS[type(self.payload)]


def detect_format(head: bytes) -> str | None:
    """Classify a file from its first 8 bytes: 'png', 'pnm', or None."""
    if head[:8] == _png.SIGNATURE:
        return "png"
    if head[:2] in (b"P2", b"P3", b"P5", b"P6") and (
        len(head) == 2 or head[2:3] in b" \t\r\n\x0b\x0c#"
    ):
        return "pnm"
    return None


def read_image(path: str | os.PathLike) -> DecodedImage:
    """Decode a PNG or PNM file, auto-detecting the format."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such image file: {path}")
    data = path.read_bytes()
    fmt = detect_format(data[:8])
    if fmt is None:
        raise UnsupportedFormatError(
            f"{path}: not a PNG or PNM file (unrecognized magic bytes)"
        )
    if fmt == "png":
        return DecodedImage(_png.decode(data))
    return DecodedImage(_pnm.decode(data))


def write_image(img: DecodedImage | Payload, path: str | os.PathLike,
                format: str) -> None:
    """Encode to ``path`` in the given format: 'png', 'pgm', or 'ppm'.

    PGM accepts only grayscale payloads and PPM only truecolor ones;
    convert explicitly before writing. PNG accepts all three payloads
    (indexed data is limited to 256 palette entries).
    """
    payload = img.payload if isinstance(img, DecodedImage) else img
    if format == "png":
        if isinstance(payload, Gray16Image):
            data = _png.encode_gray(payload)
        elif isinstance(payload, TruecolorImage):
            data = _png.encode_rgb(payload)
        elif isinstance(payload, IndexedImage):
            data = _png.encode_indexed(payload)
        else:
            raise TypeError(f"cannot encode {type(payload)!r}")
    elif format == "pgm":
        if not isinstance(payload, Gray16Image):
            raise CodecError(
                f"PGM stores grayscale only, not {type(payload).__name__}"
            )
        data = _pnm.encode_gray(payload)
    elif format == "ppm":
        if not isinstance(payload, TruecolorImage):
            raise CodecError(
                f"PPM stores truecolor only, not {type(payload).__name__}"
            )
        data = _pnm.encode_rgb(payload)
    else:
        raise ValueError(f"unknown format {format!r} (use png, pgm, or ppm)")
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise CodecError(f"cannot write {path}: {exc}") from exc


def expand_indexed(img: IndexedImage) -> TruecolorImage:
    """Resolve palette lookups into 16-bit channel planes."""
    rgb16 = np.rint(img.map * 65535.0).astype(np.uint16)
    rows = rgb16[img.index - 1]
    return TruecolorImage(rows[:, :, 0], rows[:, :, 1], rows[:, :, 2])


def read_gray(path: str | os.PathLike) -> RealImage:
    """Read any supported file as a grayscale real image in [0, 1].

    Truecolor payloads are collapsed by luma; indexed payloads are expanded
    through their colormap first.
    """
    decoded = read_image(path)
    payload = decoded.payload
    if isinstance(payload, IndexedImage):
        payload = expand_indexed(payload)
    if isinstance(payload, TruecolorImage):
        payload = core.to_gray(payload)
    return core.real_from_gray16(payload)


__all__ = [
    "DecodedImage",
    "detect_format",
    "read_image",
    "write_image",
    "read_gray",
    "expand_indexed",
    "CodecError",
    "CorruptFileError",
    "UnsupportedFormatError",
]
