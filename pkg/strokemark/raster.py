# Copyright (c) 2026 strokemark developers
# MIT License

"""
Raster substrate: image loading/saving, binarization, clean-up and
masked region compositing.

Conventions shared by every module:

* Images are 2D ``uint8`` NumPy arrays of shape ``(H, W)``.
* A *binary glyph* only holds the values 0 (text, black) and 255
  (background, white).
* Points are ``(x, y)`` tuples: ``x`` is the column index increasing to
  the right, ``y`` the row index increasing downward.  Hence the
  "smallest y" is the topmost point.
"""

import logging

import numpy as np
from scipy import ndimage
from skimage.filters import threshold_otsu

from .errors import ContractError
from .utils.io import read_png, write_png


logger = logging.getLogger(__name__)

BLACK = 0
WHITE = 255

# 8-connectivity structuring element
STRUCT8 = np.ones((3, 3), dtype=bool)


def load_image(path):
    """
    Load a PNG (8-bit gray, or RGB reduced by BT.601 luminance) as a
    gray image.

    Raises
    ------
    ImageIOError :
        The file is missing or is not a decodable image.
    """
    return read_png(path)


def save_image(path, img, clobber=True):
    """Save the gray/binary image as an 8-bit grayscale PNG."""
    write_png(path, img, clobber=clobber)


def _check_image(img, name="image"):
    img = np.asarray(img)
    if img.ndim != 2 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ContractError("%s must be a non-empty 2D array, got shape %s"
                            % (name, img.shape))
    return img


def otsu_threshold(img):
    """
    Compute the binarization threshold ``t`` by Otsu's method, such that
    pixels ``< t`` are text.

    A constant image has no inter-class variance; ``t = 128`` is used.
    """
    img = _check_image(img)
    if img.min() == img.max():
        return 128
    # NOTE: ``threshold_otsu()`` returns ``thresh`` with the foreground
    #       being ``img > thresh``, i.e., text is ``img <= thresh``.
    return int(np.floor(threshold_otsu(img))) + 1


def binarize(img, threshold=None):
    """
    Binarize the gray image into a binary glyph.

    Parameters
    ----------
    img : 2D `~numpy.ndarray`
        The gray image.
    threshold : int, optional
        Pixels ``< threshold`` become text (0), the others background
        (255).  Computed by Otsu's method if not given.

    Returns
    -------
    glyph : 2D ``uint8`` `~numpy.ndarray`
    """
    img = _check_image(img)
    if threshold is None:
        threshold = otsu_threshold(img)
    return np.where(img < threshold, BLACK, WHITE).astype(np.uint8)


def text_mask(glyph):
    """Boolean mask of the text (black) pixels."""
    return np.asarray(glyph) == BLACK


def from_mask(mask):
    """Binary glyph from a boolean text mask."""
    return np.where(mask, BLACK, WHITE).astype(np.uint8)


def is_empty(glyph):
    return not np.any(text_mask(glyph))


def composite_region(base, patch, mask):
    """
    Compose ``patch`` into ``base`` inside the white region of ``mask``.

    Raises
    ------
    ContractError :
        The three images do not share the same dimensions.
    """
    base = _check_image(base, "base")
    patch = np.asarray(patch)
    mask = np.asarray(mask)
    if base.shape != patch.shape or base.shape != mask.shape:
        raise ContractError("dimension mismatch: base %s, patch %s, mask %s"
                            % (base.shape, patch.shape, mask.shape))
    return np.where(mask == WHITE, patch, base).astype(base.dtype)


def remove_small_components(mask, min_size, structure=STRUCT8):
    """
    Remove the connected components of the boolean ``mask`` smaller than
    ``min_size`` pixels.
    """
    labels, num = ndimage.label(mask, structure=structure)
    if num == 0:
        return mask.copy()
    sizes = np.bincount(labels.ravel())
    keep = sizes >= min_size
    keep[0] = False
    return keep[labels]


def fill_small_holes(mask, min_size):
    """
    Fill the holes (background components not touching the image border)
    of the boolean text ``mask`` smaller than ``min_size`` pixels.
    """
    # Background uses 4-connectivity, dual to the 8-connected text
    labels, num = ndimage.label(~mask)
    if num == 0:
        return mask.copy()
    sizes = np.bincount(labels.ravel())
    border = np.unique(np.concatenate([labels[0, :], labels[-1, :],
                                       labels[:, 0], labels[:, -1]]))
    small = sizes < min_size
    small[0] = False
    small[border] = False
    return mask | small[labels]


def prepare(img, min_area=4):
    """
    Prepare a (possibly degraded) gray image for the glyph analysis:
    3x3 median filter, Otsu binarization, then removal of specks and
    pin holes smaller than ``min_area`` pixels.

    Both the embedding analysis and the extraction run through this
    function, so that they see the same binary glyph.
    """
    img = _check_image(img)
    smoothed = ndimage.median_filter(img, size=3, mode="nearest")
    mask = text_mask(binarize(smoothed))
    if min_area > 1:
        mask = remove_small_components(mask, min_area)
        mask = fill_small_holes(mask, min_area)
    return from_mask(mask)


def pad_white(img, width):
    """Pad the image with a white border of the given width."""
    return np.pad(img, width, mode="constant", constant_values=WHITE)
