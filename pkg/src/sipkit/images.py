"""Image value types.

Five representations cover the whole library:

* ``RealImage`` -- float64 samples, nominally in [0, 1]; the working
  representation every pipeline operates on.
* ``Gray16Image`` -- integer samples in [0, 65535]; the storage-level
  grayscale model used at the codec boundary.
* ``TruecolorImage`` -- three 16-bit planes (R, G, B).
* ``BinaryImage`` -- samples in {0, 1}; masks.
* ``IndexedImage`` -- paletted image: 1-based index array plus an (N, 3)
  colormap with real entries in [0, 1].

All types are frozen and hold read-only arrays, so any image value may be
shared freely across threads; operations never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    if out is arr or out.base is not None:
        out = out.copy()
    out.setflags(write=False)
    return out


def _check_2d(arr: np.ndarray, what: str) -> None:
    if arr.ndim != 2:
        raise ValueError(f"{what} must be 2D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{what} must be at least 1x1, got shape {arr.shape}")


@dataclass(frozen=True)
class RealImage:
    """2D array of finite real samples, row-major."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        _check_2d(arr, "RealImage")
        if not np.all(np.isfinite(arr)):
            raise ValueError("RealImage samples must be finite")
        object.__setattr__(self, "samples", _freeze(arr))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True)
class Gray16Image:
    """2D array of integers in [0, 65535]."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples)
        _check_2d(arr, "Gray16Image")
        if not np.issubdtype(arr.dtype, np.integer):
            rounded = np.rint(arr)
            if not np.array_equal(rounded, arr):
                raise ValueError("Gray16Image samples must be integers")
            arr = rounded
        if arr.size and (arr.min() < 0 or arr.max() > 65535):
            raise ValueError("Gray16Image samples must lie in [0, 65535]")
        object.__setattr__(self, "samples", _freeze(arr.astype(np.uint16)))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True)
class TruecolorImage:
    """Three 16-bit channel planes of identical dimensions."""

    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray

    def __post_init__(self):
        planes = {}
        shape = None
        for name in ("red", "green", "blue"):
            plane = Gray16Image(getattr(self, name)).samples
            if shape is None:
                shape = plane.shape
            elif plane.shape != shape:
                raise ValueError("truecolor planes must share dimensions")
            planes[name] = plane
        for name, plane in planes.items():
            object.__setattr__(self, name, plane)

    @property
    def width(self) -> int:
        return self.red.shape[1]

    @property
    def height(self) -> int:
        return self.red.shape[0]


@dataclass(frozen=True)
class BinaryImage:
    """2D array with samples in {0, 1}."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples)
        _check_2d(arr, "BinaryImage")
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
        uniq = np.unique(arr)
        if not np.all(np.isin(uniq, (0, 1))):
            raise ValueError("BinaryImage samples must be 0 or 1")
        object.__setattr__(self, "samples", _freeze(arr.astype(np.uint8)))

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    def complement(self) -> "BinaryImage":
        """Swap foreground and background (1 - x)."""
        return BinaryImage(1 - self.samples)


@dataclass(frozen=True)
class IndexedImage:
    """Paletted image: 1-based indices into an (N, 3) real colormap."""

    index: np.ndarray
    map: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.index)
        _check_2d(idx, "IndexedImage index")
        if not np.issubdtype(idx.dtype, np.integer):
            raise ValueError("index array must be integer")
        cmap = np.asarray(self.map, dtype=np.float64)
        if cmap.ndim != 2 or cmap.shape[1] != 3 or cmap.shape[0] < 1:
            raise ValueError(f"colormap must be (N, 3), got {cmap.shape}")
        if cmap.min() < 0.0 or cmap.max() > 1.0:
            raise ValueError("colormap entries must lie in [0, 1]")
        n = cmap.shape[0]
        if idx.min() < 1 or idx.max() > n:
            raise ValueError(f"index entries must lie in [1, {n}]")
        object.__setattr__(self, "index", _freeze(idx.astype(np.int32)))
        object.__setattr__(self, "map", _freeze(cmap))

    @property
    def width(self) -> int:
        return self.index.shape[1]

    @property
    def height(self) -> int:
        return self.index.shape[0]


@dataclass(frozen=True)
class LabelImage:
    """2D array of region identifiers forming the dense range 1..n."""

    labels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.labels)
        _check_2d(arr, "LabelImage")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("labels must be integers")
        lo = int(arr.min())
        if lo < 1:
            raise ValueError("labels must be >= 1")
        hi = int(arr.max())
        present = np.unique(arr)
        if len(present) != hi:
            raise ValueError("labels must cover the dense range 1..max")
        object.__setattr__(self, "labels", _freeze(arr.astype(np.int32)))

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def max_label(self) -> int:
        return int(self.labels.max())


@dataclass(frozen=True)
class DistanceImage:
    """Per-pixel distance to the nearest background pixel.

    The squared variant stores exact non-negative integers; the euclidean
    variant stores float64 square roots of those integers.
    """

    values: np.ndarray
    squared: bool

    def __post_init__(self):
        arr = np.asarray(self.values)
        _check_2d(arr, "DistanceImage")
        if self.squared:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError("squared distances must be integers")
            arr = arr.astype(np.int64)
        else:
            arr = arr.astype(np.float64)
        if arr.size and arr.min() < 0:
            raise ValueError("distances must be non-negative")
        object.__setattr__(self, "values", _freeze(arr))

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


# A multiscale skeleton is just a real image in [0, 1]: zero on background,
# and on foreground the contour-arc separation of the pixel's generators
# normalized by its component's total contour length.
SkeletonField = RealImage
