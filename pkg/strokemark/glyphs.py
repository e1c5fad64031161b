# Copyright (c) 2026 strokemark developers
# MIT License

"""
Synthetic stroke fonts: Latin letters described as round-capped
polylines in the unit box, rasterized at any size.

They stand in for rendered TrueType text in the fixtures, the evaluation
corpus and the document test pages, so that the package needs no font
files.  The face is an extra-condensed display face: the two stems of
the carrier letters start level, ``STEM_PITCH`` apart (well inside the
reference box of the handle selection), so that the left stem top is
the handle and the right stem top its reference.  Two styles are
provided:

plain :
    thin strokes (7% of the glyph size), full proportions;
bold :
    thick strokes (10% of the glyph size), slightly condensed.

Coordinates are ``(x, y)`` with ``y`` growing downward; capitals run
from 0.15 to 0.85 and the lowercase x-height from 0.38 to 0.85.
"""

import logging
import math

import numpy as np

from .raster import BLACK, WHITE
from .utils.draw import polyline


logger = logging.getLogger(__name__)


# Distance between the paired stems (in the unit box)
STEM_PITCH = 0.135
_L = 0.5 - STEM_PITCH / 2
_R = 0.5 + STEM_PITCH / 2
_C = 0.5

# Stroke polylines of every letter
LETTERS = {
    # Paired stems: the carriers
    "H": [[(_L, 0.15), (_L, 0.85)], [(_R, 0.15), (_R, 0.85)],
          [(_L, 0.5), (_R, 0.5)]],
    "K": [[(_L, 0.15), (_L, 0.85)],
          [(_R, 0.15), (_R, 0.22), (_L, 0.56)],
          [(0.49, 0.49), (_R, 0.85)]],
    "M": [[(_L, 0.15), (_L, 0.85)], [(_R, 0.15), (_R, 0.85)],
          [(_L, 0.30), (_C, 0.52), (_R, 0.30)]],
    "N": [[(_L, 0.15), (_L, 0.85)], [(_R, 0.15), (_R, 0.85)],
          [(_L, 0.32), (_R, 0.68)]],
    "U": [[(_L, 0.15), (_L, 0.70), (_C, 0.82), (_R, 0.70), (_R, 0.15)]],
    "V": [[(_L, 0.15), (_L, 0.45), (_C, 0.85), (_R, 0.45), (_R, 0.15)]],
    "W": [[(_L, 0.15), (_L, 0.85)], [(_R, 0.15), (_R, 0.85)],
          [(_L, 0.85), (_C, 0.60), (_R, 0.85)]],
    "Y": [[(_L, 0.15), (_L, 0.32), (_C, 0.50)],
          [(_R, 0.15), (_R, 0.32), (_C, 0.50), (_C, 0.85)]],
    "m": [[(0.365, 0.38), (0.365, 0.85)], [(_C, 0.38), (_C, 0.85)],
          [(0.635, 0.38), (0.635, 0.85)],
          [(0.365, 0.60), (0.4325, 0.52), (_C, 0.60)],
          [(_C, 0.60), (0.5675, 0.52), (0.635, 0.60)]],
    "n": [[(_L, 0.38), (_L, 0.85)], [(_R, 0.38), (_R, 0.85)],
          [(_L, 0.60), (_C, 0.52), (_R, 0.60)]],
    "q": [[(_L, 0.38), (_L, 0.55), (_C, 0.63), (_R, 0.55)],
          [(_R, 0.38), (_R, 0.95)]],
    "r": [[(_L, 0.38), (_L, 0.85)], [(_L, 0.60), (_R, 0.46), (_R, 0.38)]],
    "u": [[(_L, 0.38), (_L, 0.70), (_C, 0.80), (_R, 0.70)],
          [(_R, 0.38), (_R, 0.85)]],
    "v": [[(_L, 0.38), (_L, 0.58), (_C, 0.85), (_R, 0.58), (_R, 0.38)]],
    "w": [[(_L, 0.38), (_L, 0.85)], [(_R, 0.38), (_R, 0.85)],
          [(_L, 0.85), (_C, 0.66), (_R, 0.85)]],
    "y": [[(_L, 0.38), (_L, 0.55), (_C, 0.72)],
          [(_R, 0.38), (_R, 0.55), (_C, 0.72), (0.46, 0.95)]],
    "4": [[(_L, 0.15), (_L, 0.60), (0.66, 0.60)], [(_R, 0.15), (_R, 0.85)]],
    # Keypoints too far apart: never embeddable
    "E": [[(0.7, 0.15), (0.3, 0.15), (0.3, 0.85), (0.7, 0.85)],
          [(0.3, 0.5), (0.62, 0.5)]],
    "L": [[(0.3, 0.15), (0.3, 0.85), (0.72, 0.85)]],
    "T": [[(0.22, 0.15), (0.78, 0.15)], [(0.5, 0.15), (0.5, 0.85)]],
    # No endpoints
    "o": [[(0.5, 0.38), (0.64, 0.44), (0.7, 0.6), (0.64, 0.78), (0.5, 0.85),
           (0.36, 0.78), (0.3, 0.6), (0.36, 0.44), (0.5, 0.38)]],
    "O": [[(0.5, 0.15), (0.7, 0.25), (0.78, 0.5), (0.7, 0.75), (0.5, 0.85),
           (0.3, 0.75), (0.22, 0.5), (0.3, 0.25), (0.5, 0.15)]],
}

# The letters designed to carry a bit (both bits embeddable)
CARRIERS = "HKMNUVWYmnqruvwy4"

FONTS = {
    "plain": {"width": 0.07, "xscale": 1.0},
    "bold": {"width": 0.10, "xscale": 0.95},
}

# Glyph sizes of the evaluation corpus [pixel]
CORPUS_SIZES = (192, 256)

# Thinnest stroke [pixel]
MIN_WIDTH = 3


def stroke_width(font, size):
    """Stroke width [pixel] of the font at the glyph size."""
    return max(MIN_WIDTH, _font(font)["width"] * size)


def _font(font):
    try:
        return FONTS[font]
    except KeyError:
        raise ValueError("unknown font: %s" % font)


def draw_letter(canvas, letter, font, size, offset=(0, 0)):
    """
    Draw the letter into the canvas (in place) with its unit box
    scaled to ``size`` pixels and placed at ``offset = (x, y)``.
    """
    try:
        strokes = LETTERS[letter]
    except KeyError:
        raise ValueError("no stroke glyph for letter: %r" % letter)
    style = _font(font)
    xscale = style["xscale"]
    radius = (stroke_width(font, size) - 1) / 2.0
    for stroke in strokes:
        points = [(offset[0] + (0.5 + (x - 0.5) * xscale) * (size - 1),
                   offset[1] + y * (size - 1)) for (x, y) in stroke]
        rr, cc = polyline(points, radius, shape=canvas.shape)
        canvas[rr, cc] = BLACK
    return canvas


def render_glyph(letter, font="plain", size=192):
    """
    Render one letter as a binary glyph image of ``size x size`` pixels.

    Returns
    -------
    glyph : 2D ``uint8`` `~numpy.ndarray`
        0 (text) on 255 (background).
    """
    size = int(size)
    canvas = np.full((size, size), WHITE, dtype=np.uint8)
    return draw_letter(canvas, letter, font, size)


def render_page(text, font="plain", size=96, spacing=0.15, margin=0.5):
    """
    Render a page of text, one row per line of ``text``; spaces leave
    a blank cell.

    Parameters
    ----------
    text : str
        Lines separated by ``"\\n"``.
    size : int
        Glyph cell size [pixel].
    spacing : float
        Extra gap between cells, as a fraction of the cell size.
    margin : float
        Page margin, as a fraction of the cell size.
    """
    lines = text.split("\n")
    ncol = max(len(line) for line in lines)
    step = int(math.ceil(size * (1 + spacing)))
    pad = int(math.ceil(size * margin))
    height = 2 * pad + len(lines) * step
    width = 2 * pad + max(ncol, 1) * step
    page = np.full((height, width), WHITE, dtype=np.uint8)
    for row, line in enumerate(lines):
        for col, letter in enumerate(line):
            if letter == " ":
                continue
            draw_letter(page, letter, font, size,
                        offset=(pad + col * step, pad + row * step))
    logger.debug("Rendered page of %d lines, %dx%d pixels" %
                 (len(lines), width, height))
    return page


def corpus(fonts=("plain", "bold"), sizes=CORPUS_SIZES, letters=None):
    """
    Generate the synthetic glyph corpus; by default every letter with
    endpoints.

    Yields
    ------
    item : dict
        ``{"letter", "font", "size", "image", "carrier"}``
    """
    if not letters:
        letters = [k for k in LETTERS if k not in ("o", "O")]
    for font in fonts:
        _font(font)
        for size in sizes:
            for letter in letters:
                yield {"letter": letter, "font": font, "size": int(size),
                       "image": render_glyph(letter, font, size),
                       "carrier": letter in CARRIERS}
