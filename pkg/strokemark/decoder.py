# Copyright (c) 2026 strokemark developers
# MIT License

"""
Glyph analysis and bit extraction.

analyze :
    prepare (median + Otsu + clean-up) -> thin -> prune -> detect ->
    stroke graph -> handle selection.
decode_glyph :
    Measure the gap of the selected handle/reference pair along the gap
    axis recomputed from the pair, and decide ``bit = (gap > t_embed)``.
"""

import logging
from collections import namedtuple

from .errors import NonEmbeddable
from .keypoints import detect
from .mpe import evaluate
from .raster import prepare
from .skeleton import build_stroke_graph, degree_map, prune_spurs, thin
from .tpe import measure_gap


logger = logging.getLogger(__name__)


GlyphAnalysis = namedtuple("GlyphAnalysis", [
    "binary", "skeleton", "degree", "keypoints", "graph", "selection",
])
GlyphAnalysis.__doc__ = """
The intermediate results of the glyph analysis; ``selection`` is
``None`` when the analysis stopped before the handle selection.
"""

GlyphReading = namedtuple("GlyphReading", [
    "bit", "gap", "axis", "confidence", "handle", "reference",
])
GlyphReading.__doc__ = """
The bit decoded from one glyph, the measured gap, the gap axis, the
confidence ``|gap - t_embed|``, and the recovered handle/reference.
"""


def decide_bit(gap, t_embed):
    """Bit 1 iff the gap is strictly larger than the threshold."""
    return 1 if gap > t_embed else 0


def skeletonize_glyph(img, params):
    """
    Prepare the image and compute its pruned skeleton.

    Returns
    -------
    binary, ske, deg
    """
    binary = prepare(img, min_area=params.min_area)
    ske = prune_spurs(thin(binary), length=params.spur_length)
    return (binary, ske, degree_map(ske))


def analyze(img, params, select=True):
    """
    Analyze a (possibly attacked) glyph image.

    Parameters
    ----------
    img : 2D ``uint8`` `~numpy.ndarray`
        Gray or binary glyph image.
    params : `~strokemark.params.EmbedParams`
    select : bool, optional
        Also run the handle selection; it may raise ``NonEmbeddable``.

    Returns
    -------
    analysis : `GlyphAnalysis`
    """
    binary, ske, deg = skeletonize_glyph(img, params)
    kp = detect(ske)
    graph = build_stroke_graph(ske, kp)
    selection = None
    if select:
        selection = evaluate(kp, graph, params.tau)
    return GlyphAnalysis(binary, ske, deg, kp, graph, selection)


def read_analysis(analysis, params):
    """Decode the bit from a completed analysis."""
    sel = analysis.selection
    handle = (sel.handle.x, sel.handle.y)
    reference = (sel.reference.x, sel.reference.y)
    gap, axis = measure_gap(handle, reference)
    return GlyphReading(decide_bit(gap, params.t_embed), gap, axis,
                        abs(gap - params.t_embed), handle, reference)


def decode_glyph(img, params):
    """
    Extract the bit carried by a glyph image.

    Raises
    ------
    NonEmbeddable :
        The glyph offers no handle (it carries no bit).
    """
    analysis = analyze(img, params)
    if analysis.selection is None:
        raise NonEmbeddable("no handle selected")
    reading = read_analysis(analysis, params)
    logger.debug("Decoded bit %d (gap %d, axis %s)" %
                 (reading.bit, reading.gap, reading.axis))
    return reading
