"""Elementwise image operations: conversions, normalization, thresholding.

Conventions used throughout the library:

* pipelines work on ``RealImage`` values in [0, 1];
* codecs convert to and from 16-bit integers at the boundary with
  ``real = int / 65535`` and ``int = round(real * 65535)``;
* 8-bit data is promoted with the exact factor 257 (255 * 257 = 65535).
"""

from __future__ import annotations

import numpy as np

from .images import BinaryImage, Gray16Image, RealImage, TruecolorImage

# ITU-R BT.601 luma weights; applied to 16-bit channel values.
_LUMA_R = 0.299
_LUMA_G = 0.587
_LUMA_B = 0.114


def to_gray(img: TruecolorImage) -> Gray16Image:
    """Collapse a truecolor image to grayscale luminance.

    Each pixel becomes ``round(0.299 R + 0.587 G + 0.114 B)``, clamped to
    [0, 65535].
    """
    luma = (
        _LUMA_R * img.red.astype(np.float64)
        + _LUMA_G * img.green.astype(np.float64)
        + _LUMA_B * img.blue.astype(np.float64)
    )
    return Gray16Image(np.clip(np.rint(luma), 0, 65535).astype(np.uint16))


def real_from_gray16(img: Gray16Image) -> RealImage:
    """Normalize 16-bit samples into [0, 1] by dividing by 65535."""
    return RealImage(img.samples.astype(np.float64) / 65535.0)


def gray16_from_real(img: RealImage) -> Gray16Image:
    """Quantize real samples to 16 bits: round(x * 65535), clamped."""
    q = np.rint(np.clip(img.samples, 0.0, 1.0) * 65535.0)
    return Gray16Image(q.astype(np.uint16))


def real_from_binary(mask: BinaryImage) -> RealImage:
    """View a mask as a real image with samples in {0.0, 1.0}."""
    return RealImage(mask.samples.astype(np.float64))


def normalize(img: RealImage) -> RealImage:
    """Affinely rescale samples so min maps to 0 and max to 1.

    A constant image has no range to stretch and maps to all zeros.
    """
    lo = float(img.samples.min())
    hi = float(img.samples.max())
    if hi == lo:
        return RealImage(np.zeros_like(img.samples))
    return RealImage((img.samples - lo) / (hi - lo))


def threshold(img: RealImage, t: float) -> BinaryImage:
    """Binarize: 1 where the sample is >= ``t``, else 0.

    Samples are clamped to [0, 1] before comparison. ``t`` must lie in
    [0, 1].
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {t}")
    clamped = np.clip(img.samples, 0.0, 1.0)
    return BinaryImage((clamped >= t).astype(np.uint8))


def invert(img: RealImage) -> RealImage:
    """Map each sample x to 1 - x. Expects samples in [0, 1]."""
    return RealImage(1.0 - img.samples)


def scale8to16(samples: np.ndarray) -> Gray16Image:
    """Promote 8-bit samples to 16 bits by the exact factor 257."""
    arr = np.asarray(samples)
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("8-bit samples must lie in [0, 255]")
    return Gray16Image(arr.astype(np.uint16) * 257)


def mask_multiply(img: RealImage, mask: BinaryImage) -> RealImage:
    """Elementwise product; pixels where the mask is 0 become exactly 0."""
    if img.samples.shape != mask.samples.shape:
        raise ValueError(
            f"image {img.samples.shape} and mask {mask.samples.shape} "
            "dimensions differ"
        )
    return RealImage(img.samples * mask.samples)


def equalize(img: Gray16Image) -> Gray16Image:
    """Histogram equalization over the full 16-bit range.

    Standard CDF remap: ``out = round(65535 * (cdf(v) - cdf_min) / (1 -
    cdf_min))`` with the CDF computed over 65536 bins. The mapping is
    monotone non-decreasing; constant images are returned unchanged.
    """
    counts = np.bincount(img.samples.ravel(), minlength=65536)
    cdf = np.cumsum(counts, dtype=np.float64) / img.samples.size
    occupied = np.nonzero(counts)[0]
    cdf_min = cdf[occupied[0]]
    if cdf_min == 1.0:
        return Gray16Image(img.samples.copy())
    lut = np.rint(65535.0 * (cdf - cdf_min) / (1.0 - cdf_min))
    lut = np.clip(lut, 0, 65535).astype(np.uint16)
    return Gray16Image(lut[img.samples])
