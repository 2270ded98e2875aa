"""Connected-component labeling shared by segmentation and morphology."""

from __future__ import annotations

from collections import deque

import numpy as np

_OFFSETS_4 = ((-1, 0), (1, 0), (0, -1), (0, 1))
_OFFSETS_8 = _OFFSETS_4 + ((-1, -1), (-1, 1), (1, -1), (1, 1))


def label_components(mask: np.ndarray, connectivity: int) -> tuple[np.ndarray, int]:
    """Label the True regions of ``mask`` 1..n in raster order of first pixel.

    Returns (labels, n) with 0 marking background.
    """
    if connectivity == 4:
        offsets = _OFFSETS_4
    elif connectivity == 8:
        offsets = _OFFSETS_8
    else:
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    m = np.asarray(mask, dtype=bool)
    h, w = m.shape
    labels = np.zeros((h, w), dtype=np.int32)
    n = 0
    for sy, sx in zip(*np.nonzero(m)):
        if labels[sy, sx]:
            continue
        n += 1
        labels[sy, sx] = n
        queue = deque([(int(sy), int(sx))])
        while queue:
            y, x = queue.popleft()
            for dy, dx in offsets:
                ny, nx = y + dy, x + dx
                if 0 <= ny < h and 0 <= nx < w and m[ny, nx] and not labels[ny, nx]:
                    labels[ny, nx] = n
                    queue.append((ny, nx))
    return labels, n


def count_components(mask: np.ndarray, connectivity: int = 8) -> int:
    """Number of foreground components."""
    return label_components(mask, connectivity)[1]


def count_holes(mask: np.ndarray) -> int:
    """Background regions (4-connectivity) fully enclosed by the foreground."""
    m = np.asarray(mask, dtype=bool)
    labels, n = label_components(~m, 4)
    if n == 0:
        return 0
    border = np.concatenate(
        [labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]
    )
    open_ids = set(np.unique(border[border > 0]).tolist())
    return n - len(open_ids)
