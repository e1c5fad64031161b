# Copyright (c) 2026 strokemark developers
# MIT License

"""
Mask drawing: the rectangular editing region around the handle movement.

For a movement along the X gap axis, the horizontal extent spans the
handle and the target columns.  The vertical extent is found by scanning
every column of the candidate strip for the text runs crossing the
handle row: in the difference sequence
``zeta[j] = column[j] - column[j+1]`` (with the sentinel 254 appended
after the last pixel), ``+255`` marks a white-to-black transition and
``-255`` a black-to-white one.  The top bound is the lowest white-to-black
transition at or above the handle row, the bottom bound the highest
black-to-white transition at or below it; both default to the handle
row.  The Y axis case runs the same scan on the transposed image.
"""

import logging
from collections import namedtuple

import numpy as np

from .raster import WHITE
from .tpe import AXIS_X
from .utils.draw import rectangle


logger = logging.getLogger(__name__)

# The value appended after the last pixel of every column
SENTINEL = 254


MaskRect = namedtuple("MaskRect", ["left", "right", "top", "bottom"])
MaskRect.__doc__ = """
The editing rectangle (inclusive pixel bounds) before the expansion.
"""


def _scan_columns(img, x_h, y_h, x_t, y_t):
    """The X axis scan; returns ``(left, right, top, bottom)``."""
    left, right = min(x_h, x_t), max(x_h, x_t)
    tops, bottoms = [], []
    for i in range(left, right):
        col = img[:, i].astype(np.int32)
        shifted = np.append(col[1:], SENTINEL)
        zeta = col - shifted
        idx = np.nonzero(zeta == 255)[0]
        idx = idx[idx <= y_h]
        tops.append(int(idx.max()) if idx.size else y_h)
        idx = np.nonzero(zeta == -255)[0]
        idx = idx[idx >= y_h]
        bottoms.append(int(idx.min()) if idx.size else y_h)
    top = min([y_h, y_t] + tops)
    bottom = max([y_h, y_t] + bottoms)
    return (left, right, top, bottom)


def compute_rect(cover, handle, target, axis):
    """
    Compute the editing rectangle of the movement ``handle -> target``.

    Parameters
    ----------
    cover : 2D ``uint8`` `~numpy.ndarray`
        The binary glyph (0 = text, 255 = background).
    handle, target : (x, y)
    axis : str
        The gap axis, ``"X"`` or ``"Y"``.

    Returns
    -------
    rect : `MaskRect`
        An empty candidate strip (same column, resp. row) gives the
        rectangle spanning only the two points.
    """
    cover = np.asarray(cover)
    x_h, y_h = int(handle[0]), int(handle[1])
    x_t, y_t = int(target[0]), int(target[1])
    if axis == AXIS_X:
        rect = MaskRect(*_scan_columns(cover, x_h, y_h, x_t, y_t))
    else:
        # Rows of the image are the columns of the transposed image
        top, bottom, left, right = _scan_columns(cover.T, y_h, x_h, y_t, x_t)
        rect = MaskRect(left, right, top, bottom)
    logger.debug("Mask rect: x=[%d, %d], y=[%d, %d]" % rect)
    return rect


def draw_mask(rect, height, width, sigma):
    """
    Rasterize the rectangle expanded by ``sigma`` on every side and
    clamped to the image.

    Returns
    -------
    mask : 2D ``uint8`` `~numpy.ndarray`
        255 (white) inside the editable region, 0 elsewhere.
    """
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    mask = np.zeros((height, width), dtype=np.uint8)
    rr, cc = rectangle(rect.left - sigma, rect.right + sigma,
                       rect.top - sigma, rect.bottom + sigma,
                       shape=(height, width))
    mask[rr, cc] = WHITE
    return mask
