"""Spatial filters: Gaussian blur, square-window median, Sobel edges.

All three use replicate padding at the borders. The Gaussian is evaluated
as a full 2D stencil whose terms are accumulated in a transpose-symmetric
order, so ``blur(img.T).T == blur(img)`` holds bit-exactly; a separable
two-pass evaluation cannot guarantee that, because the two 1D passes do
not commute in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .images import BinaryImage, RealImage

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
SOBEL_Y = SOBEL_X.T

# Rows per chunk are sized so the materialized windows stay near this many
# float64 elements.
_CHUNK_ELEMS = 8_000_000


@dataclass(frozen=True)
class GaussianKernel:
    """Sampled Gaussian taps, truncated at 3 sigma and renormalized."""

    sigma: float
    taps: np.ndarray

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        taps = np.asarray(self.taps, dtype=np.float64)
        if taps.ndim != 1 or len(taps) % 2 != 1:
            raise ValueError("taps must be a 1D odd-length vector")
        if taps.min() < 0:
            raise ValueError("taps must be non-negative")
        if abs(taps.sum() - 1.0) > 1e-12:
            raise ValueError("taps must sum to 1")
        object.__setattr__(self, "taps", taps)

    @classmethod
    def from_sigma(cls, sigma: float) -> "GaussianKernel":
        if sigma <= 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        radius = math.ceil(3.0 * sigma)
        offsets = np.arange(-radius, radius + 1, dtype=np.float64)
        taps = np.exp(-(offsets**2) / (2.0 * sigma * sigma))
        return cls(sigma, taps / taps.sum())

    @property
    def radius(self) -> int:
        return len(self.taps) // 2


def _pad_edge(samples: np.ndarray, r: int) -> np.ndarray:
    return np.pad(samples, r, mode="edge")


def gaussian_blur(img: RealImage, sigma: float) -> RealImage:
    """Blur with a unit-DC Gaussian kernel; output size equals input size.

    Constant images are returned unchanged: with replicate padding and a
    unit-sum kernel the convolution is the identity on them, so we skip
    the arithmetic (and its rounding noise) entirely.
    """
    kernel = GaussianKernel.from_sigma(sigma)
    x = img.samples
    if x.max() == x.min():
        return RealImage(x.copy())

    r = kernel.radius
    k2d = np.outer(kernel.taps, kernel.taps)
    padded = _pad_edge(x, r)
    h, w = x.shape
    out = np.zeros((h, w), dtype=np.float64)

    def view(i: int, j: int) -> np.ndarray:
        return padded[i : i + h, j : j + w]

    n = len(kernel.taps)
    # Diagonal terms first, then symmetric pairs folded together: the term
    # multiset per pixel is identical for img and img.T, and IEEE addition
    # is commutative within a pair, so the accumulation order is
    # orientation-independent.
    for d in range(n):
        out += k2d[d, d] * view(d, d)
    for i in range(n):
        for j in range(i + 1, n):
            out += k2d[i, j] * view(i, j) + k2d[i, j] * view(j, i)
    return RealImage(out)


def median_filter(img: RealImage, radius: int) -> RealImage:
    """Replace each pixel by the median of its (2r+1)^2 window.

    The median of an even count is the lower of the two middle order
    statistics, so outputs are always members of the input window.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius == 0:
        return RealImage(img.samples.copy())
    x = img.samples
    h, w = x.shape
    k = 2 * radius + 1
    padded = _pad_edge(x, radius)
    windows = np.lib.stride_tricks.sliding_window_view(padded, (k, k))
    kth = (k * k - 1) // 2
    out = np.empty((h, w), dtype=np.float64)
    rows_per_chunk = max(1, _CHUNK_ELEMS // (w * k * k))
    for y0 in range(0, h, rows_per_chunk):
        y1 = min(h, y0 + rows_per_chunk)
        block = windows[y0:y1].reshape(y1 - y0, w, k * k)
        out[y0:y1] = np.partition(block, kth, axis=-1)[:, :, kth]
    return RealImage(out)


def _correlate3(x: np.ndarray, stencil: np.ndarray) -> np.ndarray:
    h, w = x.shape
    padded = _pad_edge(x, 1)
    out = np.zeros((h, w), dtype=np.float64)
    for i in range(3):
        for j in range(3):
            c = stencil[i, j]
            if c != 0.0:
                out += c * padded[i : i + h, j : j + w]
    return out


def sobel_gradient(img: RealImage) -> np.ndarray:
    """Gradient magnitude sqrt(gx^2 + gy^2) from the 3x3 Sobel pair."""
    gx = _correlate3(img.samples, SOBEL_X)
    gy = _correlate3(img.samples, SOBEL_Y)
    return np.hypot(gx, gy)


def sobel_edges(img: RealImage, t: float) -> BinaryImage:
    """Mark pixels whose gradient magnitude reaches ``t`` times the maximum.

    A constant image has zero gradient everywhere and yields an all-zero
    mask for any threshold.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"edge threshold must lie in [0, 1], got {t}")
    g = sobel_gradient(img)
    gmax = g.max()
    if gmax == 0.0:
        return BinaryImage(np.zeros(g.shape, dtype=np.uint8))
    return BinaryImage((g / gmax >= t).astype(np.uint8))
