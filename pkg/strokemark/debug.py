# Copyright (c) 2026 strokemark developers
# MIT License

"""
Debug overlays of a glyph embedding.

skeleton.png :
    the glyph (light gray) with its pruned skeleton (green);
keypoints.png :
    the skeleton with the endpoints (blue), junctions (red), handle
    (magenta ring) and target (orange);
mask.png :
    the glyph with the editing mask tinted yellow;
before_after.png :
    the cover and the encoded glyph side by side;
trace_mpe.json :
    the scored handle candidates.
"""

import os
import logging

import numpy as np

from .mpe import trace_table
from .raster import BLACK, WHITE
from .utils.draw import capsule, disk
from .utils.io import write_json, write_png


logger = logging.getLogger(__name__)

GLYPH_GRAY = 190
SKELETON = (0, 160, 0)
ENDPOINT = (0, 0, 255)
JUNCTION = (255, 0, 0)
HANDLE = (255, 0, 255)
TARGET = (255, 140, 0)
MASK_TINT = (255, 255, 0)


def _canvas(glyph):
    gray = np.where(np.asarray(glyph) == BLACK, GLYPH_GRAY, WHITE)
    return np.repeat(gray[:, :, np.newaxis], 3, axis=2).astype(np.uint8)


def _paint(rgb, rr, cc, color):
    rgb[rr, cc] = color


def skeleton_overlay(glyph, ske):
    rgb = _canvas(glyph)
    rgb[np.asarray(ske, dtype=bool)] = SKELETON
    return rgb


def keypoint_overlay(glyph, ske, kp, handle=None, target=None):
    rgb = skeleton_overlay(glyph, ske)
    shape = rgb.shape[:2]
    radius = max(1.5, min(shape) / 64.0)
    for k in kp.endpoints:
        _paint(rgb, *disk((k.x, k.y), radius, shape), ENDPOINT)
    for k in kp.junctions:
        _paint(rgb, *disk((k.x, k.y), radius, shape), JUNCTION)
    if handle is not None:
        rr, cc = disk(handle, radius * 2.5, shape)
        inner = ((rr - handle[1])**2 + (cc - handle[0])**2 >
                 (radius * 1.5)**2)
        _paint(rgb, rr[inner], cc[inner], HANDLE)
    if target is not None:
        _paint(rgb, *disk(target, radius, shape), TARGET)
        if handle is not None:
            _paint(rgb, *capsule(handle, target, 0.5, shape), TARGET)
    return rgb


def mask_overlay(glyph, mask):
    rgb = _canvas(glyph).astype(np.float64)
    if mask is not None:
        inside = np.asarray(mask) == WHITE
        rgb[inside] = 0.6 * rgb[inside] + 0.4 * np.array(MASK_TINT)
    return rgb.astype(np.uint8)


def before_after(cover, encoded, gap=4):
    cover = np.asarray(cover, dtype=np.uint8)
    sep = np.full((cover.shape[0], gap), 128, dtype=np.uint8)
    return np.hstack([cover, sep, np.asarray(encoded, dtype=np.uint8)])


def write_overlays(outdir, cover, encoded, analysis, clobber=True):
    """
    Write the debug overlays of one embedding.

    Parameters
    ----------
    outdir : str
    cover : 2D ``uint8`` `~numpy.ndarray`
        The binary cover glyph.
    encoded : `~strokemark.encoder.EncodedGlyph`
    analysis : `~strokemark.decoder.GlyphAnalysis`
        The analysis of the cover.

    Returns
    -------
    files : list[str]
    """
    sel = encoded.selection
    handle = (sel.handle.x, sel.handle.y)
    target = tuple(encoded.plan.target) if encoded.plan.moved else None
    images = [
        ("skeleton.png", skeleton_overlay(cover, analysis.skeleton)),
        ("keypoints.png", keypoint_overlay(cover, analysis.skeleton,
                                           analysis.keypoints, handle,
                                           target)),
        ("mask.png", mask_overlay(cover, encoded.mask)),
        ("before_after.png", before_after(cover, encoded.image)),
    ]
    files = []
    for name, img in images:
        path = os.path.join(outdir, name)
        write_png(path, img, clobber=clobber)
        files.append(path)
    path = os.path.join(outdir, "trace_mpe.json")
    write_json(path, trace_table(sel), clobber=clobber)
    files.append(path)
    logger.info("Wrote %d debug files to: %s" % (len(files), outdir))
    return files
