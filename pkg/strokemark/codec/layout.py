# Copyright (c) 2026 strokemark developers
# MIT License

"""
Character segmentation and reading order.

The 8-connected text components of the page are grouped into characters:
two components merge when their horizontal spans overlap by at least
half of the narrower one and their vertical gap is at most half of the
median component height (the dot of an "i", multi-part glyphs).  The
characters are ordered by row bands, i.e., characters whose vertical
centers differ by less than 0.6 median heights from the first character
of the band, and then by ascending x.

Touching glyphs are segmented as one character.
"""

import logging
from collections import namedtuple

import numpy as np
from scipy import ndimage
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..raster import STRUCT8, WHITE, text_mask


logger = logging.getLogger(__name__)

# Minimum horizontal overlap (of the narrower span) to merge components
MERGE_OVERLAP = 0.5
# Maximum vertical gap (in median component heights) to merge components
MERGE_GAP = 0.5
# Maximum center offset (in median character heights) within a row band
BAND_TOLERANCE = 0.6


Character = namedtuple("Character", ["box", "labels", "embeddable"])
Character.__doc__ = """
One segmented character.

box : (x, y, w, h)
    The bounding box of all its components.
labels : tuple of int
    The component labels (in `DocumentLayout.labels`).
embeddable : bool or None
    Whether it carries a bit; ``None`` until determined by the codec.
"""


class DocumentLayout(namedtuple("DocumentLayout", ["characters", "labels"])):
    """
    The characters in reading order, and the component label image.
    """
    __slots__ = ()

    def __len__(self):
        return len(self.characters)

    @property
    def boxes(self):
        return [c.box for c in self.characters]


def _component_boxes(labels, num):
    boxes = []
    for sl in ndimage.find_objects(labels, max_label=num):
        boxes.append((sl[1].start, sl[0].start, sl[1].stop, sl[0].stop))
    return np.array(boxes, dtype=np.int64).reshape(-1, 4)


def _merge_groups(boxes):
    """Group the component boxes ``(x0, y0, x1, y1)`` to characters."""
    n = len(boxes)
    heights = boxes[:, 3] - boxes[:, 1]
    widths = boxes[:, 2] - boxes[:, 0]
    max_gap = MERGE_GAP * float(np.median(heights))
    rows, cols = [], []
    for i in range(n):
        for j in range(i + 1, n):
            overlap = (min(boxes[i, 2], boxes[j, 2]) -
                       max(boxes[i, 0], boxes[j, 0]))
            if overlap < MERGE_OVERLAP * min(widths[i], widths[j]):
                continue
            gap = (max(boxes[i, 1], boxes[j, 1]) -
                   min(boxes[i, 3], boxes[j, 3]))
            if gap <= max_gap:
                rows.append(i)
                cols.append(j)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    __, group_of = connected_components(graph, directed=False)
    return group_of


def _order(boxes):
    """Reading order of the character boxes ``(x0, y0, x1, y1)``."""
    heights = boxes[:, 3] - boxes[:, 1]
    tol = BAND_TOLERANCE * float(np.median(heights))
    cy = (boxes[:, 1] + boxes[:, 3]) / 2.0
    order = []
    band, band_cy = [], None
    for i in sorted(range(len(boxes)), key=lambda k: (cy[k], boxes[k, 0])):
        if band and abs(cy[i] - band_cy) >= tol:
            order.extend(sorted(band, key=lambda k: (boxes[k, 0], cy[k])))
            band = []
        if not band:
            band_cy = cy[i]
        band.append(i)
    order.extend(sorted(band, key=lambda k: (boxes[k, 0], cy[k])))
    return order


def segment(page):
    """
    Segment the binary page into characters in reading order.

    Parameters
    ----------
    page : 2D ``uint8`` `~numpy.ndarray`
        The binary page (0 = text).

    Returns
    -------
    layout : `DocumentLayout`
        Empty for a blank page.
    """
    labels, num = ndimage.label(text_mask(page), structure=STRUCT8)
    if num == 0:
        return DocumentLayout([], labels)
    comp = _component_boxes(labels, num)
    group_of = _merge_groups(comp)
    ngroup = int(group_of.max()) + 1
    chars = np.zeros((ngroup, 4), dtype=np.int64)
    members = [[] for __ in range(ngroup)]
    for i, g in enumerate(group_of):
        members[g].append(i + 1)
        if len(members[g]) == 1:
            chars[g] = comp[i]
        else:
            chars[g, :2] = np.minimum(chars[g, :2], comp[i, :2])
            chars[g, 2:] = np.maximum(chars[g, 2:], comp[i, 2:])
    characters = []
    for g in _order(chars):
        x0, y0, x1, y1 = (int(v) for v in chars[g])
        characters.append(Character((x0, y0, x1 - x0, y1 - y0),
                                    tuple(sorted(members[g])), None))
    logger.debug("Segmented %d components into %d characters" %
                 (num, len(characters)))
    return DocumentLayout(characters, labels)


def crop_region(shape, box, pad):
    """The crop ``(top, bottom, left, right)`` of a box grown by ``pad``."""
    x, y, w, h = box
    return (max(0, y - pad), min(shape[0], y + h + pad),
            max(0, x - pad), min(shape[1], x + w + pad))


def crop_character(page, layout, char, pad):
    """
    Crop one character (box grown by ``pad``) out of the binary page; the
    pixels of the other characters inside the crop are whited out.

    Returns
    -------
    crop : 2D ``uint8`` `~numpy.ndarray`
    region : (top, bottom, left, right)
    """
    region = crop_region(page.shape, char.box, pad)
    t, b, l, r = region
    crop = np.array(page[t:b, l:r], dtype=np.uint8)
    lab = layout.labels[t:b, l:r]
    other = (lab > 0) & ~np.isin(lab, char.labels)
    crop[other] = WHITE
    return (crop, region)


def paste_character(page, original, edited, region):
    """
    Write the changed pixels of an edited character crop back into the
    page (in place).
    """
    t, b, l, r = region
    changed = np.asarray(edited) != np.asarray(original)
    page[t:b, l:r][changed] = np.asarray(edited)[changed]
    return page
