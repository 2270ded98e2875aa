"""Exact Euclidean distance transforms of binary masks.

Two-pass separable method: first each column gets the vertical offset to
its nearest background pixel (two linear sweeps), then each row minimizes
``(x - x')^2 + g(x')^2`` over the columns by building the lower envelope
of those parabolas. All squared distances are computed in integer
arithmetic, so the result is exact, not a chamfer approximation.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .images import BinaryImage, DistanceImage


def _column_offsets(mask: np.ndarray) -> np.ndarray:
    """Per-pixel |dy| to the nearest zero in the same column.

    Columns with no zero get the sentinel h + w, which squares to more
    than any true distance in the grid and therefore never wins the row
    pass.
    """
    h, w = mask.shape
    sentinel = h + w
    g = np.empty((h, w), dtype=np.int64)
    run = np.full(w, sentinel, dtype=np.int64)
    for y in range(h):
        run = np.where(mask[y] == 0, 0, np.minimum(run + 1, sentinel))
        g[y] = run
    run = np.full(w, sentinel, dtype=np.int64)
    for y in range(h - 1, -1, -1):
        run = np.where(mask[y] == 0, 0, np.minimum(run + 1, sentinel))
        g[y] = np.minimum(g[y], run)
    return g


def _row_envelope(f: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """1D squared-distance transform of sample costs ``f`` (int64).

    Lower envelope of the parabolas ``(x - i)^2 + f[i]``; intersections are
    compared in float64, which cannot misrank parabolas at integer query
    points for grid-sized inputs (a misrounded breakpoint could only swap
    two parabolas where their integer values already tie).
    """
    n = len(f)
    fl = f.tolist()
    apex = [0] * n  # parabola apex columns
    z = [0.0] * (n + 1)  # envelope breakpoints
    z[0] = -np.inf
    z[1] = np.inf
    k = 0
    for q in range(1, n):
        fq = fl[q] + q * q
        while True:
            p = apex[k]
            s = (fq - (fl[p] + p * p)) / (2 * (q - p))
            if s <= z[k]:
                k -= 1
            else:
                break
        k += 1
        apex[k] = q
        z[k] = s
        z[k + 1] = np.inf
    # Parabola j covers x in [z[j], z[j+1]); locate each query column.
    which = np.searchsorted(np.asarray(z[1 : k + 2]), xs, side="left")
    best = np.asarray(apex[: k + 1], dtype=np.int64)[which]
    return (xs - best) * (xs - best) + f[best]


def edt_squared(mask: BinaryImage) -> DistanceImage:
    """Exact squared distance from every pixel to the nearest background
    (zero) pixel."""
    m = mask.samples
    if m.min() == 1:
        raise DomainError(
            "mask has no background pixel: every distance would be infinite"
        )
    g = _column_offsets(m)
    h, w = m.shape
    out = np.empty((h, w), dtype=np.int64)
    if w == 1:
        out[:, 0] = g[:, 0] * g[:, 0]
    else:
        cost = g * g
        xs = np.arange(w, dtype=np.int64)
        for y in range(h):
            out[y] = _row_envelope(cost[y], xs)
    return DistanceImage(out, squared=True)


def edt(mask: BinaryImage) -> DistanceImage:
    """Exact Euclidean distance: elementwise sqrt of ``edt_squared``."""
    sq = edt_squared(mask)
    return DistanceImage(np.sqrt(sq.values.astype(np.float64)), squared=False)


def edt_limited(mask: BinaryImage, dmax: float) -> DistanceImage:
    """Distance transform saturated at ``dmax``.

    Pixels within ``dmax`` of the background carry their exact distance,
    all others carry exactly ``dmax``, keeping downstream arithmetic total.
    """
    if dmax <= 0:
        raise ValueError(f"dmax must be positive, got {dmax}")
    full = edt(mask)
    return DistanceImage(np.minimum(full.values, float(dmax)), squared=False)
