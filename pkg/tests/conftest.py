# Copyright (c) 2026 strokemark developers
# MIT License

"""
Shared fixtures: synthetic glyphs and skeletons drawn with NumPy.
"""

import numpy as np
import pytest

from strokemark.configs import ConfigManager
from strokemark.params import EmbedParams
from strokemark.raster import BLACK, WHITE
from strokemark.utils.draw import capsule


def blank(h, w):
    return np.full((h, w), WHITE, dtype=np.uint8)


def bar(h, w, p0, p1, width):
    """A round-capped stroke from ``p0`` to ``p1`` on a white canvas."""
    img = blank(h, w)
    rr, cc = capsule(p0, p1, (width - 1) / 2.0, shape=(h, w))
    img[rr, cc] = BLACK
    return img


def skeleton_of(h, w, pixels):
    ske = np.zeros((h, w), dtype=bool)
    for (x, y) in pixels:
        ske[y, x] = True
    return ske


@pytest.fixture
def l_skeleton():
    """
    An "L": endpoints (5, 0) and (12, 10); the corner pixel is cut so
    that no pixel has three neighbors.
    """
    pixels = [(5, y) for y in range(0, 10)] + [(x, 10) for x in range(6, 13)]
    return skeleton_of(16, 16, pixels)


@pytest.fixture
def t_skeleton():
    """
    A "T": endpoints (0, 0), (10, 0), (5, 10) and the junction (5, 0).
    """
    pixels = [(x, 0) for x in range(0, 11)] + [(5, y) for y in range(1, 11)]
    return skeleton_of(16, 16, pixels)


@pytest.fixture
def o_skeleton():
    """A closed 8-connected ring without keypoints."""
    pixels = ([(x, 2) for x in range(4, 9)] + [(9, 3), (10, 4)] +
              [(10, y) for y in range(5, 9)] + [(9, 9), (8, 10)] +
              [(x, 10) for x in range(4, 8)] + [(3, 9), (2, 8)] +
              [(2, y) for y in range(4, 8)] + [(3, 3)])
    return skeleton_of(13, 13, pixels)


@pytest.fixture
def params192():
    return EmbedParams.scaled(192)


@pytest.fixture
def configs():
    """Fresh default configurations (the shared CONFIGS is untouched)."""
    return ConfigManager()
