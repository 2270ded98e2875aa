"""Geometric transforms: rotation, zoom, and general affine warps.

All transforms use inverse mapping (output coordinates are mapped back
into the source and sampled there), which leaves no holes. Pixel centers
sit at integer coordinates and rotation is about the image center
((w-1)/2, (h-1)/2). Samples falling outside the source are filled with 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .images import RealImage

INTERPOLATIONS = ("nearest", "bilinear")

# cos/sin snapped for quadrant angles so 90-degree rotations are exact
# index permutations.
_QUADRANT = {0: (1.0, 0.0), 90: (0.0, 1.0), 180: (-1.0, 0.0), 270: (0.0, -1.0)}


@dataclass(frozen=True)
class AffineMap:
    """2x3 matrix taking output pixel coordinates to input coordinates.

    ``x_in = a11*x_out + a12*y_out + tx`` and likewise for y. The linear
    part must be non-singular.
    """

    a11: float
    a12: float
    tx: float
    a21: float
    a22: float
    ty: float

    def __post_init__(self):
        if abs(self.det) <= 1e-12:
            raise ValueError("affine map is singular")

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21


def _rotation_cos_sin(degrees: float) -> tuple[float, float]:
    rem = degrees % 360.0
    if rem % 90.0 == 0.0:
        return _QUADRANT[int(rem)]
    rad = math.radians(degrees)
    return math.cos(rad), math.sin(rad)


def rotation_canvas(width: int, height: int, degrees: float) -> tuple[int, int]:
    """Bounding-box canvas of the rotated w x h rectangle."""
    c, s = _rotation_cos_sin(degrees)
    out_w = math.ceil(width * abs(c) + height * abs(s))
    out_h = math.ceil(width * abs(s) + height * abs(c))
    return out_w, out_h


def rotation_map(width: int, height: int, degrees: float) -> AffineMap:
    """Inverse map used by ``rotate``: positive angles turn the content
    clockwise on screen."""
    c, s = _rotation_cos_sin(degrees)
    out_w, out_h = rotation_canvas(width, height, degrees)
    cx_in = (width - 1) / 2.0
    cy_in = (height - 1) / 2.0
    cx_out = (out_w - 1) / 2.0
    cy_out = (out_h - 1) / 2.0
    return AffineMap(
        a11=c, a12=s, tx=cx_in - c * cx_out - s * cy_out,
        a21=-s, a22=c, ty=cy_in + s * cx_out - c * cy_out,
    )


def affine_warp(img: RealImage, map: AffineMap, out_dims: tuple[int, int],
                interp: str = "bilinear") -> RealImage:
    """Sample the input at ``map @ (x, y, 1)`` for every output pixel."""
    if interp not in INTERPOLATIONS:
        raise ValueError(f"interp must be one of {INTERPOLATIONS}, got {interp!r}")
    out_w, out_h = out_dims
    if out_w < 1 or out_h < 1:
        raise ValueError(f"degenerate output size {out_w}x{out_h}")
    x = img.samples
    h, w = x.shape

    xo = np.arange(out_w, dtype=np.float64)
    yo = np.arange(out_h, dtype=np.float64)[:, None]
    xi = map.a11 * xo + map.a12 * yo + map.tx
    yi = map.a21 * xo + map.a22 * yo + map.ty

    if interp == "nearest":
        # round-half-up keeps the choice deterministic at exact .5 coords
        xn = np.floor(xi + 0.5).astype(np.int64)
        yn = np.floor(yi + 0.5).astype(np.int64)
        valid = (xn >= 0) & (xn <= w - 1) & (yn >= 0) & (yn <= h - 1)
        out = np.zeros((out_h, out_w), dtype=np.float64)
        out[valid] = x[yn[valid], xn[valid]]
        return RealImage(out)

    x0 = np.floor(xi)
    y0 = np.floor(yi)
    fx = xi - x0
    fy = yi - y0
    x0 = x0.astype(np.int64)
    y0 = y0.astype(np.int64)
    out = np.zeros((out_h, out_w), dtype=np.float64)
    for dy, wy in ((0, (1.0 - fy)), (1, fy)):
        for dx, wx in ((0, (1.0 - fx)), (1, fx)):
            xs = x0 + dx
            ys = y0 + dy
            inside = (xs >= 0) & (xs <= w - 1) & (ys >= 0) & (ys <= h - 1)
            vals = np.zeros((out_h, out_w), dtype=np.float64)
            vals[inside] = x[ys[inside], xs[inside]]
            out += wx * wy * vals
    return RealImage(out)


def rotate(img: RealImage, degrees: float, interp: str = "bilinear") -> RealImage:
    """Rotate about the image center onto the expanded bounding-box canvas."""
    out_dims = rotation_canvas(img.width, img.height, degrees)
    return affine_warp(img, rotation_map(img.width, img.height, degrees),
                       out_dims, interp)


def zoom(img: RealImage, factor: float, interp: str = "bilinear") -> RealImage:
    """Rescale by ``factor``; output dimensions are round(factor * dims)."""
    if factor <= 0:
        raise ValueError(f"zoom factor must be positive, got {factor}")
    out_w = int(math.floor(img.width * factor + 0.5))
    out_h = int(math.floor(img.height * factor + 0.5))
    if out_w < 1 or out_h < 1:
        raise ValueError(f"degenerate output size {out_w}x{out_h}")
    inv = 1.0 / factor
    cx_in = (img.width - 1) / 2.0
    cy_in = (img.height - 1) / 2.0
    cx_out = (out_w - 1) / 2.0
    cy_out = (out_h - 1) / 2.0
    map = AffineMap(
        a11=inv, a12=0.0, tx=cx_in - inv * cx_out,
        a21=0.0, a22=inv, ty=cy_in - inv * cy_out,
    )
    return affine_warp(img, map, (out_w, out_h), interp)
