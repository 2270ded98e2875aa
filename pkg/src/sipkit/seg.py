"""Watershed segmentation by priority flooding from regional minima.

The input is quantized to 256 levels (floor(x * 255) on clamped [0, 1]
samples) so plateaus are stable against floating-point noise. Flooding
uses 8-connectivity and a priority queue keyed by (level, entry order):
every pixel joins the first basin that reaches it, ties within a level
resolving in FIFO order. There are no watershed-line pixels, so the
number of regions always equals the number of regional minima, and
repeated runs produce identical labelings.
"""

from __future__ import annotations

import heapq
from collections import deque

import numpy as np

from ._labeling import count_components, count_holes, label_components
from .images import BinaryImage, LabelImage, RealImage

_OFFSETS_8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))

__all__ = [
    "quantize256",
    "regional_minima",
    "watershed",
    "count_objects",
    "count_components",
    "count_holes",
    "label_components",
]


def quantize256(img: RealImage) -> np.ndarray:
    """Clamp to [0, 1] and quantize to integer levels 0..255."""
    return np.floor(np.clip(img.samples, 0.0, 1.0) * 255.0).astype(np.int16)


def _minima_plateaus(q: np.ndarray) -> tuple[np.ndarray, int]:
    """Label regional-minimum plateaus 1..n in raster order.

    A plateau is an 8-connected set of equal quantized value; it is a
    regional minimum iff none of its pixels has a strictly lower
    8-neighbor.
    """
    h, w = q.shape
    labels = np.zeros((h, w), dtype=np.int32)
    visited = np.zeros((h, w), dtype=bool)
    n = 0
    for sy in range(h):
        for sx in range(w):
            if visited[sy, sx]:
                continue
            level = q[sy, sx]
            plateau = [(sy, sx)]
            visited[sy, sx] = True
            queue = deque(plateau)
            is_min = True
            while queue:
                y, x = queue.popleft()
                for dy, dx in _OFFSETS_8:
                    ny, nx = y + dy, x + dx
                    if not (0 <= ny < h and 0 <= nx < w):
                        continue
                    v = q[ny, nx]
                    if v < level:
                        is_min = False
                    elif v == level and not visited[ny, nx]:
                        visited[ny, nx] = True
                        queue.append((ny, nx))
                        plateau.append((ny, nx))
            if is_min:
                n += 1
                for y, x in plateau:
                    labels[y, x] = n
    return labels, n


def regional_minima(img: RealImage) -> BinaryImage:
    """Mark every regional-minimum plateau of the quantized image."""
    labels, _ = _minima_plateaus(quantize256(img))
    return BinaryImage((labels > 0).astype(np.uint8))


def watershed(img: RealImage) -> LabelImage:
    """Flood the quantized image from its regional minima.

    Returns labels 1..n, where n is the number of regional minima; every
    pixel carries the label of the first basin to reach it.
    """
    q = quantize256(img)
    labels, n = _minima_plateaus(q)
    h, w = q.shape
    if n == 0:  # cannot happen: the global minimum level always qualifies
        raise AssertionError("no regional minima found")

    heap = []
    counter = 0
    for y, x in zip(*np.nonzero(labels)):
        heapq.heappush(heap, (int(q[y, x]), counter, int(y), int(x)))
        counter += 1
    while heap:
        _, _, y, x = heapq.heappop(heap)
        label = labels[y, x]
        for dy, dx in _OFFSETS_8:
            ny, nx = y + dy, x + dx
            if 0 <= ny < h and 0 <= nx < w and labels[ny, nx] == 0:
                labels[ny, nx] = label
                heapq.heappush(heap, (int(q[ny, nx]), counter, ny, nx))
                counter += 1
    return LabelImage(labels)


def count_objects(w: LabelImage) -> int:
    """Region count minus one for the background basin."""
    return w.max_label - 1
