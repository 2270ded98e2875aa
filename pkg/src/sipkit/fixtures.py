"""Synthetic test subjects: a noisy letter glyph and blood-cell-like discs.

Everything here is deterministic (fixed geometry, seeded noise) so
pipeline outputs are reproducible byte for byte.
"""

from __future__ import annotations

import numpy as np

from .images import BinaryImage, RealImage

_GLYPH_SEED = 11


def _segment_distance(xx, yy, p0, p1):
    """Distance from each grid point to the segment p0-p1."""
    px, py = p0
    qx, qy = p1
    vx, vy = qx - px, qy - py
    norm2 = vx * vx + vy * vy
    t = ((xx - px) * vx + (yy - py) * vy) / norm2
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(xx - (px + t * vx), yy - (py + t * vy))


def glyph_a_mask(size: int = 160) -> BinaryImage:
    """Clean letter-A mask: two legs and a crossbar, enclosing one hole."""
    s = size / 160.0
    xx, yy = np.meshgrid(np.arange(size, dtype=np.float64),
                         np.arange(size, dtype=np.float64))
    apex = (80 * s, 26 * s)
    left = (40 * s, 134 * s)
    right = (120 * s, 134 * s)
    bar_l = (54 * s, 98 * s)
    bar_r = (106 * s, 98 * s)
    strokes = np.minimum(
        _segment_distance(xx, yy, apex, left),
        _segment_distance(xx, yy, apex, right),
    )
    strokes = np.minimum(strokes, _segment_distance(xx, yy, bar_l, bar_r))
    return BinaryImage((strokes <= 7.0 * s).astype(np.uint8))


def glyph_a(size: int = 160, noise: float = 0.12) -> RealImage:
    """Noisy grayscale image of a dark letter A on a bright background."""
    mask = glyph_a_mask(size).samples.astype(bool)
    img = np.where(mask, 0.15, 0.95)
    rng = np.random.default_rng(_GLYPH_SEED)
    img = img + rng.uniform(-noise, noise, size=img.shape)
    return RealImage(np.clip(img, 0.0, 1.0))


def _disc_image(centers, radius: float, size: int) -> RealImage:
    xx, yy = np.meshgrid(np.arange(size, dtype=np.float64),
                         np.arange(size, dtype=np.float64))
    inside = np.zeros((size, size), dtype=bool)
    for cx, cy in centers:
        inside |= (xx - cx) ** 2 + (yy - cy) ** 2 <= radius * radius
    return RealImage(np.where(inside, 0.15, 0.97))


def two_discs(radius: float = 20.0, separation: float = 30.0,
              size: int = 128) -> RealImage:
    """Two overlapping dark discs on a bright background."""
    cy = size / 2.0
    cx = size / 2.0
    half = separation / 2.0
    return _disc_image([(cx - half, cy), (cx + half, cy)], radius, size)


def single_disc(radius: float = 20.0, size: int = 128) -> RealImage:
    """One dark disc on a bright background."""
    c = size / 2.0
    return _disc_image([(c, c)], radius, size)
