"""Morphology with exact circular structuring elements, and multiscale
skeletonization.

Dilation and erosion never sweep a structuring element: a pixel belongs to
the dilation by radius r exactly when its squared Euclidean distance to
the foreground is at most r^2, which the exact distance transform gives in
integer arithmetic. Erosion is the dual of dilation by construction, so
the complement identity holds bit-exactly.

The skeleton is a multiscale field, not a fixed thin set. Each contour of
a shape is walked once, numbering its pixels by position along the walk;
every foreground pixel then finds its exact nearest contour pixels, and
where adjacent pixels are generated by contour points far apart along the
boundary, the shape has a medial ridge. The field value is that arc
separation normalized by the component's total contour length (pixels
generated by two different contours of the same component, e.g. the outer
boundary versus a hole, get the full value 1). Thresholding the field at
rising tau progressively prunes branches whose supporting contour span is
below tau times the contour length.
"""

from __future__ import annotations

import numpy as np

from ._labeling import label_components
from .dist import edt_squared
from .errors import DomainError
from .images import BinaryImage, RealImage, SkeletonField

# Clockwise Moore neighborhood in (dy, dx), y growing downward.
_MOORE = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))
_MOORE_INDEX = {d: i for i, d in enumerate(_MOORE)}

# Pixel-to-generator distance matrices are evaluated in blocks of roughly
# this many int64 entries.
_CHUNK_ELEMS = 4_000_000


def dilate_disc(mask: BinaryImage, r: float) -> BinaryImage:
    """Grow the foreground by a Euclidean disc of radius ``r``.

    Output is 1 exactly where the squared distance to the foreground set
    is <= r^2.
    """
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    m = mask.samples
    if m.max() == 0:
        return BinaryImage(m.copy())
    d2 = edt_squared(mask.complement()).values
    return BinaryImage((d2 <= r * r).astype(np.uint8))


def erode_disc(mask: BinaryImage, r: float) -> BinaryImage:
    """Shrink the foreground: the exact dual of ``dilate_disc``."""
    return dilate_disc(mask.complement(), r).complement()


def _trace_contour(fg: np.ndarray, start: tuple[int, int],
                   backtrack: tuple[int, int]) -> list[tuple[int, int]]:
    """Moore-neighbor boundary walk with Jacob's stopping criterion.

    ``start`` is a foreground boundary pixel and ``backtrack`` a background
    neighbor of it; the walk sweeps the Moore neighborhood clockwise from
    the backtrack direction. Returns the closed walk as a pixel sequence
    (pinch points may repeat).
    """
    h, w = fg.shape
    sy, sx = start

    def next_step(cy, cx, by, bx):
        base = _MOORE_INDEX[(by - cy, bx - cx)]
        prev = (by, bx)
        for i in range(1, 9):
            dy, dx = _MOORE[(base + i) % 8]
            ny, nx = cy + dy, cx + dx
            if 0 <= ny < h and 0 <= nx < w and fg[ny, nx]:
                return (ny, nx), prev
            prev = (ny, nx)
        return None, None

    first, first_back = next_step(sy, sx, *backtrack)
    if first is None:
        return [start]  # isolated pixel
    walk = [start]
    cur, back = first, first_back
    limit = 8 * int(fg.sum()) + 8
    while not (cur == start and back == backtrack):
        walk.append(cur)
        nxt, back = next_step(cur[0], cur[1], back[0], back[1])
        cur = nxt
        if len(walk) > limit:
            raise RuntimeError("contour walk failed to close")
    return walk


def _component_contours(fg: np.ndarray, comp_labels: np.ndarray, ncomp: int):
    """Closed boundary walks for every component: the outer contour plus
    one inner contour per hole.

    Returns (walks, walk_comp): the pixel sequences and, per walk, the
    owning component id (1-based).
    """
    h, w = fg.shape
    walks: list[list[tuple[int, int]]] = []
    walk_comp: list[int] = []

    for comp in range(1, ncomp + 1):
        ys, xs = np.nonzero(comp_labels == comp)
        sy, sx = int(ys[0]), int(xs[0])  # topmost-left: west/north are bg
        walks.append(_trace_contour(fg, (sy, sx), (sy, sx - 1)))
        walk_comp.append(comp)

    bg_labels, nbg = label_components(~fg, 4)
    border = np.concatenate(
        [bg_labels[0, :], bg_labels[-1, :], bg_labels[:, 0], bg_labels[:, -1]]
    )
    open_ids = set(np.unique(border[border > 0]).tolist())
    for hole in range(1, nbg + 1):
        if hole in open_ids:
            continue
        ys, xs = np.nonzero(bg_labels == hole)
        hy, hx = int(ys[0]), int(xs[0])  # topmost-left pixel of the hole
        start = (hy - 1, hx)  # the fg pixel above it
        walks.append(_trace_contour(fg, start, (hy, hx)))
        walk_comp.append(int(comp_labels[start]))
    return walks, walk_comp


def _nearest_generator_sets(py, px, locs_y, locs_x):
    """Indices of every exactly-nearest generator location per pixel.

    Returns (starts, flat): pixel i's tied location indices are
    ``flat[starts[i]:starts[i + 1]]``.
    """
    n = len(py)
    m = len(locs_y)
    dmin = np.empty(n, dtype=np.int64)
    rows_per = max(1, _CHUNK_ELEMS // max(1, m))
    for i0 in range(0, n, rows_per):
        i1 = min(n, i0 + rows_per)
        d2 = (py[i0:i1, None] - locs_y[None, :]) ** 2
        d2 += (px[i0:i1, None] - locs_x[None, :]) ** 2
        dmin[i0:i1] = d2.min(axis=1)
    counts = np.zeros(n, dtype=np.int64)
    pix_list = []
    loc_list = []
    for i0 in range(0, n, rows_per):
        i1 = min(n, i0 + rows_per)
        d2 = (py[i0:i1, None] - locs_y[None, :]) ** 2
        d2 += (px[i0:i1, None] - locs_x[None, :]) ** 2
        tie_r, tie_c = np.nonzero(d2 == dmin[i0:i1, None])
        pix_list.append(tie_r + i0)
        loc_list.append(tie_c)
    pix = np.concatenate(pix_list)
    flat = np.concatenate(loc_list)
    np.add.at(counts, pix, 1)
    starts = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    order = np.argsort(pix, kind="stable")
    return starts, flat[order]


def skeleton(mask: BinaryImage) -> SkeletonField:
    """Multiscale skeleton field of a mask; see the module docstring.

    The mask is padded by one background pixel before processing (and
    cropped after), so shapes touching the border behave like interior
    shapes. Requires at least one foreground and one background pixel.
    """
    m = mask.samples
    if m.max() == 0 or m.min() == 1:
        raise DomainError(
            "skeleton needs at least one foreground and one background pixel"
        )
    fg = np.pad(m, 1).astype(bool)
    comp_labels, ncomp = label_components(fg, 8)
    walks, walk_comp = _component_contours(fg, comp_labels, ncomp)

    # One generator per walk step; pinch-point pixels carry several arcs.
    step_y, step_x, step_contour, step_arc = [], [], [], []
    contour_len = []
    comp_total = np.zeros(ncomp + 1, dtype=np.int64)
    for cid, (walk, comp) in enumerate(zip(walks, walk_comp)):
        contour_len.append(len(walk))
        comp_total[comp] += len(walk)
        for arc, (y, x) in enumerate(walk):
            step_y.append(y)
            step_x.append(x)
            step_contour.append(cid)
            step_arc.append(arc)
    step_y = np.asarray(step_y, dtype=np.int64)
    step_x = np.asarray(step_x, dtype=np.int64)
    step_contour = np.asarray(step_contour, dtype=np.int64)
    step_arc = np.asarray(step_arc, dtype=np.int64)
    contour_len = np.asarray(contour_len, dtype=np.int64)
    contour_comp = np.asarray(walk_comp, dtype=np.int64)

    h, w = fg.shape
    keys = step_y * w + step_x
    uniq_keys, inverse = np.unique(keys, return_inverse=True)
    locs_y = uniq_keys // w
    locs_x = uniq_keys % w
    # steps grouped by unique location
    order = np.argsort(inverse, kind="stable")
    loc_counts = np.bincount(inverse, minlength=len(uniq_keys))
    loc_starts = np.zeros(len(uniq_keys) + 1, dtype=np.int64)
    np.cumsum(loc_counts, out=loc_starts[1:])
    steps_by_loc = order

    py, px = np.nonzero(fg)
    pixel_index = np.full((h, w), -1, dtype=np.int64)
    pixel_index[py, px] = np.arange(len(py))
    starts, tied_locs = _nearest_generator_sets(py, px, locs_y, locs_x)

    def arc_set(i: int) -> np.ndarray:
        pieces = [
            steps_by_loc[loc_starts[j] : loc_starts[j + 1]]
            for j in tied_locs[starts[i] : starts[i + 1]]
        ]
        return pieces[0] if len(pieces) == 1 else np.concatenate(pieces)

    def separation(a_steps: np.ndarray, b_steps: np.ndarray, comp: int,
                   total: int) -> int:
        # Generators on another component's contour (possible only through
        # exact distance ties) say nothing about this shape; skip them.
        best = 0
        for a in a_steps:
            ca = int(step_contour[a])
            if int(contour_comp[ca]) != comp:
                continue
            aa = int(step_arc[a])
            for b in b_steps:
                cb = int(step_contour[b])
                if int(contour_comp[cb]) != comp:
                    continue
                if ca == cb:
                    d = abs(aa - int(step_arc[b]))
                    clen = int(contour_len[ca])
                    sep = min(d, clen - d)
                else:
                    sep = total  # e.g. outer boundary versus a hole
                if sep > best:
                    best = sep
        return best

    values = np.zeros((h, w), dtype=np.float64)
    for i in range(len(py)):
        y, x = int(py[i]), int(px[i])
        comp = int(comp_labels[y, x])
        total = int(comp_total[comp])
        if total <= 1:
            continue
        a_steps = arc_set(i)
        best = 0
        for ny, nx in ((y, x + 1), (y + 1, x)):
            j = pixel_index[ny, nx]
            if j < 0:
                continue
            sep = separation(a_steps, arc_set(int(j)), comp, total)
            if sep > best:
                best = sep
        if best:
            values[y, x] = min(1.0, best / total)
    return RealImage(values[1:-1, 1:-1])
