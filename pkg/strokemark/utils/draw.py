# Copyright (c) 2026 strokemark developers
# MIT license


"""
Generic drawers (a.k.a. painters) for binary stroke images, built upon
``skimage.draw``.

The drawers return pixel coordinates ``(rr, cc)`` (like
``skimage.draw``), which may be used to directly index into an array,
e.g. ``img[rr, cc] = 0``.
"""

import logging

import numpy as np
from skimage import draw


logger = logging.getLogger(__name__)


def _empty():
    return (np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp))


def _unique(rr, cc):
    if len(rr) == 0:
        return _empty()
    pairs = np.unique(np.column_stack([rr, cc]).astype(np.intp), axis=0)
    return (pairs[:, 0], pairs[:, 1])


def disk(center, radius, shape=None):
    """
    Generate coordinates of pixels within the disk at ``center=(x, y)``.

    A radius below 0.5 still covers the center pixel.
    """
    radius = max(float(radius), 0.5)
    rr, cc = draw.disk((float(center[1]), float(center[0])), radius + 1e-6,
                       shape=shape)
    return (rr.astype(np.intp), cc.astype(np.intp))


def capsule(p0, p1, radius, shape=None):
    """
    Generate coordinates of pixels within the round-capped segment
    (a.k.a. capsule, or the Minkowski sum of a segment and a disk):
    the rectangle swept by the segment plus the two end disks.

    Parameters
    ----------
    p0, p1 : (x, y) tuple
        The two ends of the segment.
    radius : float
        Half of the stroke thickness.
    shape : int tuple (nrow, ncol), optional
        Constrain the coordinates to the image of this shape.

    Returns
    -------
    rr, cc : int `~numpy.ndarray`
        Pixel coordinates (rows, columns) of the capsule.
    """
    x0, y0 = float(p0[0]), float(p0[1])
    x1, y1 = float(p1[0]), float(p1[1])
    radius = max(float(radius), 0.5)
    r0, c0 = disk((x0, y0), radius, shape=shape)
    length = np.hypot(x1 - x0, y1 - y0)
    if length == 0:
        return _unique(r0, c0)
    r1, c1 = disk((x1, y1), radius, shape=shape)
    # Segment normal, scaled to the radius
    nx, ny = -(y1 - y0) / length * radius, (x1 - x0) / length * radius
    rows = np.array([y0 + ny, y1 + ny, y1 - ny, y0 - ny])
    cols = np.array([x0 + nx, x1 + nx, x1 - nx, x0 - nx])
    rp, cp = draw.polygon(rows, cols, shape=shape)
    rr = np.concatenate([r0, r1, rp])
    cc = np.concatenate([c0, c1, cp])
    return _unique(rr, cc)


def polyline(points, radius, shape=None):
    """
    Generate coordinates of pixels within the round-capped, round-joined
    polyline through the given ``(x, y)`` points.
    """
    points = list(points)
    if len(points) == 1:
        points = points * 2
    rr, cc = [], []
    for p0, p1 in zip(points[:-1], points[1:]):
        r, c = capsule(p0, p1, radius, shape=shape)
        rr.append(r)
        cc.append(c)
    return _unique(np.concatenate(rr), np.concatenate(cc))


def rectangle(left, right, top, bottom, shape):
    """
    Generate coordinates of pixels within the (inclusive) rectangle
    ``[left, right] x [top, bottom]`` clamped to the image.

    Returns empty coordinates if the clamped rectangle is empty.
    """
    r0 = max(int(np.floor(top)), 0)
    c0 = max(int(np.floor(left)), 0)
    r1 = min(int(np.ceil(bottom)), shape[0] - 1)
    c1 = min(int(np.ceil(right)), shape[1] - 1)
    if r1 < r0 or c1 < c0:
        return _empty()
    rr, cc = draw.rectangle((r0, c0), end=(r1, c1), shape=shape)
    return (rr.ravel().astype(np.intp), cc.ravel().astype(np.intp))
