# Copyright (c) 2026 strokemark developers
# MIT License

"""
Glyph encoding: the pluggable encode backends, the deterministic stroke
warp, the masked region replacement and the per-glyph bit embedding.

embed_bit :
    analysis (``decoder.analyze``) -> handle selection -> target
    estimation -> mask drawing -> backend encode -> masked region
    replacement -> decode verification.
"""

import logging
import math
from collections import OrderedDict, namedtuple

import numpy as np
from scipy import ndimage

from .decoder import analyze, read_analysis, skeletonize_glyph
from .errors import ContractError, EmbedInfeasible, NonEmbeddable
from .keypoints import ENDPOINT, detect
from .mdm import compute_rect, draw_mask
from .mpe import evaluate, select_random
from .raster import BLACK, WHITE, binarize, composite_region
from .skeleton import width_map
from .tpe import TargetPlan, geometry_of, plan_target, random_target
from .utils.hashutil import array_md5
from .utils.random import make_rng


logger = logging.getLogger(__name__)


EncodedGlyph = namedtuple("EncodedGlyph", [
    "image", "plan", "mask", "backend_id", "selection",
])
EncodedGlyph.__doc__ = """
The encoded glyph.

image : 2D ``uint8`` `~numpy.ndarray`
    The binary encoded glyph; identical to the cover outside the mask,
    and identical everywhere when ``plan.moved`` is ``False``.
plan : `~strokemark.tpe.TargetPlan`
mask : 2D ``uint8`` `~numpy.ndarray` or None
selection : `~strokemark.mpe.HandleSelection`
"""


def masked_region_replacement(cover, edited, mask):
    """
    Compose the (binarized) edited content into the cover inside the
    mask; the output is pixel-identical to the cover outside the mask.

    Raises
    ------
    ContractError :
        The images do not share the same dimensions.
    """
    edited = np.asarray(edited)
    if np.shape(cover) != edited.shape:
        raise ContractError("dimension mismatch: cover %s, edited %s"
                            % (np.shape(cover), edited.shape))
    return composite_region(cover, binarize(edited, threshold=128), mask)


def estimate_width(glyph, path, offset=3):
    """
    Stroke width: the median local thickness of the stroke pixels from
    ``offset`` pixels inside the stroke on.
    """
    wmap = width_map(glyph)
    samples = path[offset:offset + 16] or path[-1:]
    values = [wmap[y, x] for (x, y) in samples if wmap[y, x] > 0]
    if not values:
        values = [wmap[y, x] for (x, y) in path if wmap[y, x] > 0]
    if not values:
        return 1.0
    return float(np.median(values))


def _owned_pixels(cover, graph, pixels, width):
    """
    The text pixels owned by the given skeleton pixels: those whose
    nearest skeleton pixel is one of them, within ``width + 1``.
    """
    ske = graph.skeleton_mask(cover.shape)
    dist, (iy, ix) = ndimage.distance_transform_edt(~ske, return_indices=True)
    chosen = np.zeros(cover.shape, dtype=bool)
    for (x, y) in pixels:
        chosen[y, x] = True
    return chosen[iy, ix] & (dist <= width + 1) & (cover == BLACK)


def _shift(region, dx, dy):
    """Translate the ``True`` pixels by the integer offset (dx, dy)."""
    out = np.zeros_like(region)
    ys, xs = np.nonzero(region)
    ys, xs = ys + int(dy), xs + int(dx)
    keep = ((ys >= 0) & (ys < region.shape[0]) &
            (xs >= 0) & (xs < region.shape[1]))
    out[ys[keep], xs[keep]] = True
    return out


def _outward(path, width):
    """Unit direction out of the stroke at the first path pixel."""
    k = min(len(path) - 1, int(math.ceil(width)))
    if k == 0:
        return None
    vx, vy = path[0][0] - path[k][0], path[0][1] - path[k][1]
    norm = math.hypot(vx, vy)
    return (vx / norm, vy / norm) if norm > 0 else None


def warp_stroke(cover, graph, handle, target, mask, width, draw_target=None):
    """
    Move the stroke end at ``handle`` to ``target`` by translating the
    terminal chunk of the stroke, within the mask.

    Elongation :
        the cap of the stroke (the text pixels owned by the skeleton
        pixels up to ``width/2 + 1`` from the handle) is swept from its
        place to the moved place, which extends the stroke with its own
        cross-section.
    Shortening :
        the terminal chunk (owned by the skeleton pixels up to the
        movement plus ``width`` from the handle) is erased and pasted
        again at the moved place, inside the remaining stroke.

    All modifications are clipped to the mask.

    Parameters
    ----------
    cover : 2D ``uint8`` `~numpy.ndarray`
        The binary glyph.
    graph : `~strokemark.skeleton.StrokeGraph`
        The stroke graph of ``cover``.
    handle, target : (x, y)
    mask : 2D ``uint8`` `~numpy.ndarray`
    width : float
        Stroke width.
    draw_target : (x, y), optional
        The point the stroke end is moved to (default ``target``).

    Raises
    ------
    EmbedInfeasible :
        The handle lies outside the mask, or the stroke is too short for
        the shortening.
    """
    cover = np.asarray(cover)
    editable = np.asarray(mask) == WHITE
    if draw_target is None:
        draw_target = target
    x_h, y_h = int(handle[0]), int(handle[1])
    if not editable[y_h, x_h]:
        raise EmbedInfeasible("handle (%d, %d) outside the mask"
                              % (x_h, y_h))
    dx = float(draw_target[0]) - x_h
    dy = float(draw_target[1]) - y_h
    length = math.hypot(dx, dy)
    edited = cover.copy()
    if length == 0:
        return edited

    # The last path pixel belongs to the far node
    full = graph.stroke_path(handle)
    last = max(0, len(full) - 2)
    out = _outward(full, width)
    elongate = out is None or dx * out[0] + dy * out[1] >= 0

    if elongate:
        k = min(last, int(math.ceil(width / 2.0)) + 1)
        chunk = _owned_pixels(cover, graph, full[:k + 1], width)
        swept = np.zeros(cover.shape, dtype=bool)
        nstep = max(1, int(math.ceil(2 * length)))
        for i in range(nstep + 1):
            s = i / float(nstep)
            swept |= _shift(chunk, np.floor(s * dx + 0.5),
                            np.floor(s * dy + 0.5))
        changed = swept & editable & (cover != BLACK)
        edited[changed] = BLACK
    else:
        need = int(math.ceil(length)) + 2
        if last < need:
            raise EmbedInfeasible("stroke of %d pixels too short for a "
                                  "shortening by %.1f" % (len(full), length))
        k = min(last, int(math.ceil(length + width)) + 1)
        chunk = _owned_pixels(cover, graph, full[:k + 1], width)
        moved = _shift(chunk, np.floor(dx + 0.5), np.floor(dy + 0.5))
        edited[chunk & editable] = WHITE
        edited[moved & editable] = BLACK
    logger.debug("Warped stroke %s by (%.1f, %.1f): %d pixels changed, "
                 "chunk of %d skeleton pixels" %
                 ("end" if elongate else "chunk", dx, dy,
                  int(np.count_nonzero(edited != cover)), k + 1))
    return edited


class EncodeBackend:
    """
    The encode backend contract.

    ``encode()`` returns an edited image of the cover dimensions whose
    observable changes all lie inside the mask.  Backends must be safe for
    concurrent invocation on distinct inputs.
    """
    name = None

    def encode(self, cover, analysis, handle, target, mask, width, params):
        raise NotImplementedError


class WarpBackend(EncodeBackend):
    """
    The deterministic stroke warp with closed-loop handle tracking: after
    every warp, the endpoint nearest to the target is located again, and
    the drawing target is shifted by the remaining error (up to
    ``params.max_attempts`` rounds).
    """
    name = "warp"

    def encode(self, cover, analysis, handle, target, mask, width, params):
        draw_target = target
        best = None
        h, w = cover.shape
        for attempt in range(params.max_attempts):
            edited = warp_stroke(cover, analysis.graph, handle, target, mask,
                                 width, draw_target=draw_target)
            result = masked_region_replacement(cover, edited, mask)
            __, ske, __ = skeletonize_glyph(result, params)
            endpoints = detect(ske).endpoints
            if not endpoints:
                break
            q = min(endpoints, key=lambda k: ((k.x - target[0])**2 +
                                              (k.y - target[1])**2))
            err = (target[0] - q.x, target[1] - q.y)
            score = err[0]**2 + err[1]**2
            if best is None or score < best[0]:
                best = (score, edited)
            logger.debug("Warp attempt %d: endpoint error (%d, %d)" %
                         (attempt + 1, err[0], err[1]))
            if score == 0:
                break
            draw_target = (min(max(draw_target[0] + err[0], 0), w - 1),
                           min(max(draw_target[1] + err[1], 0), h - 1))
        if best is None:
            raise EmbedInfeasible("the warped glyph has no endpoints")
        return best[1]


# All available encode backends
BACKENDS = OrderedDict([
    ("warp", WarpBackend),
])


def get_backend(name):
    try:
        return BACKENDS[name]()
    except KeyError:
        raise ValueError("unknown encode backend: %s" % name)


def _distance(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def verify_embedding(result, cover_analysis, plan, selection, params):
    """
    Re-extract the encoded glyph and check the synchronization: decoded
    bit, recovered handle at the target, recovered reference at the
    reference, and unchanged keypoint counts.

    Raises
    ------
    EmbedInfeasible :
        Any of the checks fails.
    """
    try:
        analysis = analyze(result, params)
    except NonEmbeddable as e:
        raise EmbedInfeasible("encoded glyph not decodable: %s" % e.reason)
    reading = read_analysis(analysis, params)
    reference = (selection.reference.x, selection.reference.y)
    tol = max(2, params.margin)
    if reading.bit != plan.bit:
        raise EmbedInfeasible("decoded bit %d != %d (gap %d)"
                              % (reading.bit, plan.bit, reading.gap))
    if _distance(reading.handle, plan.target) > tol:
        raise EmbedInfeasible("recovered handle %s off the target %s"
                              % (reading.handle, plan.target))
    if _distance(reading.reference, reference) > 2:
        raise EmbedInfeasible("recovered reference %s != %s"
                              % (reading.reference, reference))
    if analysis.keypoints.counts() != cover_analysis.keypoints.counts():
        raise EmbedInfeasible("keypoint counts changed: %s -> %s" % (
            cover_analysis.keypoints.counts(), analysis.keypoints.counts()))
    return reading


def plan_bit(analysis, selection, bit, params):
    """
    Plan the movement embedding ``bit`` with the selected handle and
    reference of an analyzed glyph.

    Returns
    -------
    plan : `~strokemark.tpe.TargetPlan`

    Raises
    ------
    EmbedInfeasible :
        The handle is a junction, or the target cannot be planned.
    """
    if selection.handle.kind != ENDPOINT:
        raise EmbedInfeasible("the selected handle is a junction")
    handle = (selection.handle.x, selection.handle.y)
    reference = (selection.reference.x, selection.reference.y)
    geom = geometry_of(handle, reference, analysis.skeleton, params.r_h,
                       deg=analysis.degree)
    stroke = analysis.graph.stroke_path(handle)
    return plan_target(geom, handle, reference, bit, params.t_embed,
                       params.margin, shape=analysis.binary.shape,
                       fixed_distance=params.fixed_distance,
                       min_stroke_vector=params.min_stroke_vector,
                       stroke_length=len(stroke))


def can_carry(analysis, params):
    """
    Whether the analyzed glyph can carry either bit: a handle is
    selected and the targets of both bits can be planned.  It is decided
    from the glyph alone, hence alike on the cover and on the encoded
    glyph.
    """
    if analysis.selection is None:
        return False
    try:
        for bit in (0, 1):
            plan_bit(analysis, analysis.selection, bit, params)
    except (EmbedInfeasible, NonEmbeddable):
        return False
    return True


def embed_bit(cover, bit, params, backend=None):
    """
    Embed one bit into a glyph.

    Parameters
    ----------
    cover : 2D ``uint8`` `~numpy.ndarray`
        The glyph image (binarized by Otsu's method if gray).
    bit : int
        0 or 1.
    params : `~strokemark.params.EmbedParams`
        The (scaled) parameters.
    backend : `EncodeBackend`, optional
        Default to the backend named by ``params.backend``.

    Returns
    -------
    encoded : `EncodedGlyph`

    Raises
    ------
    NonEmbeddable :
        The glyph offers no handle (e.g., no endpoints).
    EmbedInfeasible :
        The movement cannot be realized, or the result does not decode
        back to ``bit`` with the same handle.
    """
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1, got %r" % (bit,))
    if backend is None:
        backend = get_backend(params.backend)
    cover = binarize(cover)
    h, w = cover.shape
    analysis = analyze(cover, params, select=False)
    if not analysis.keypoints.endpoints:
        raise NonEmbeddable("no endpoints")

    rng = None
    if (params.random_handle or params.random_target or
            not params.rules.y_priority):
        rng = make_rng(params.seed, array_md5(cover), bit)
    if params.random_handle:
        selection = select_random(analysis.keypoints, params.tau, rng)
    else:
        selection = evaluate(analysis.keypoints, analysis.graph, params.tau,
                             rules=params.rules, rng=rng)
    if selection.handle.kind != ENDPOINT:
        raise EmbedInfeasible("the selected handle is a junction")
    handle = (selection.handle.x, selection.handle.y)
    reference = (selection.reference.x, selection.reference.y)

    stroke = analysis.graph.stroke_path(handle)
    if params.random_target:
        geom = geometry_of(handle, reference, analysis.skeleton, params.r_h,
                           deg=analysis.degree)
        target = random_target(handle, bit, params.t_embed, params.margin,
                               rng, shape=(h, w))
        plan = TargetPlan(bit, target != handle, target,
                          _distance(handle, target), 0, geom)
    else:
        plan = plan_bit(analysis, selection, bit, params)
        geom = plan.geometry
    if not plan.moved:
        logger.info("Bit %d already encoded (gap %d); glyph unchanged" %
                    (bit, geom.delta))
        return EncodedGlyph(cover, plan, None, backend.name, selection)

    width = estimate_width(analysis.binary, stroke)
    # The moved cap must fit inside the mask
    sigma = max(params.sigma, int(math.ceil(width)) + 1)
    rect = compute_rect(cover, handle, plan.target, geom.axis)
    mask = draw_mask(rect, h, w, sigma)

    edited = backend.encode(cover, analysis, handle, plan.target, mask,
                            width, params)
    result = masked_region_replacement(cover, edited, mask)
    if params.verify:
        verify_embedding(result, analysis, plan, selection, params)
    logger.info("Embedded bit %d: handle (%d, %d) -> target (%d, %d)" %
                (bit, handle[0], handle[1], plan.target[0], plan.target[1]))
    return EncodedGlyph(result, plan, mask, backend.name, selection)
