# Copyright (c) 2026 strokemark developers
# MIT License

"""
Topological keypoint detection on the glyph skeleton.

* Endpoints: skeleton pixels with exactly one 8-connected neighbor.
* Junctions: skeleton pixels with three or more neighbors; such pixels
  within Chebyshev distance 2 of each other are merged into one junction
  located at their (rounded) centroid, since the thinning often splits
  one visual junction into several adjacent pixels.

Both sets are ordered by ``(y, x)`` ascending.
"""

import logging
from collections import namedtuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .skeleton import degree_map


logger = logging.getLogger(__name__)

ENDPOINT = "endpoint"
JUNCTION = "junction"

# Chebyshev radius merging junction pixels into one cluster
JUNCTION_RADIUS = 2


Keypoint = namedtuple("Keypoint", ["x", "y", "kind", "pixels"])
Keypoint.__new__.__defaults__ = (None,)
Keypoint.__doc__ = """
A keypoint of the skeleton.

x, y : int
    Pixel coordinates (junction: rounded cluster centroid).
kind : str
    ``"endpoint"`` or ``"junction"``.
pixels : tuple[(x, y)]
    The skeleton pixels represented by this keypoint.
"""


class KeypointSet(namedtuple("KeypointSet", ["endpoints", "junctions"])):
    """
    The endpoint set E and the junction set C of one skeleton.
    """
    __slots__ = ()

    @property
    def all(self):
        """All keypoints ordered by ``(y, x)``."""
        return sorted(self.endpoints + self.junctions,
                      key=lambda k: (k.y, k.x))

    def __len__(self):
        return len(self.endpoints) + len(self.junctions)

    def counts(self):
        return (len(self.endpoints), len(self.junctions))


def _sort(keypoints):
    return tuple(sorted(keypoints, key=lambda k: (k.y, k.x)))


def _round_half_up(v):
    return int(np.floor(v + 0.5))


def cluster_junctions(points, radius=JUNCTION_RADIUS):
    """
    Group the ``(x, y)`` points whose Chebyshev distance is within
    ``radius`` (transitively).

    Returns
    -------
    groups : list[list[(x, y)]]
    """
    if len(points) == 0:
        return []
    pts = np.asarray(points, dtype=float)
    tree = cKDTree(pts)
    pairs = np.array(sorted(tree.query_pairs(r=radius, p=np.inf)),
                     dtype=int).reshape(-1, 2)
    n = len(pts)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])),
                       shape=(n, n))
    __, labels = connected_components(graph, directed=False)
    groups = {}
    for idx, lab in enumerate(labels):
        groups.setdefault(lab, []).append(tuple(points[idx]))
    return list(groups.values())


def detect(ske):
    """
    Detect the endpoints and junctions of the (spur-pruned) skeleton.

    Parameters
    ----------
    ske : 2D bool `~numpy.ndarray`

    Returns
    -------
    kp : `KeypointSet`
        Empty sets for an empty skeleton or a closed loop.
    """
    deg = degree_map(ske)
    ys, xs = np.nonzero(deg == 1)
    endpoints = [Keypoint(int(x), int(y), ENDPOINT, ((int(x), int(y)),))
                 for y, x in zip(ys, xs)]

    ys, xs = np.nonzero(deg >= 3)
    points = [(int(x), int(y)) for y, x in zip(ys, xs)]
    junctions = []
    for group in cluster_junctions(points):
        cx = _round_half_up(np.mean([p[0] for p in group]))
        cy = _round_half_up(np.mean([p[1] for p in group]))
        pixels = tuple(sorted(group, key=lambda p: (p[1], p[0])))
        junctions.append(Keypoint(cx, cy, JUNCTION, pixels))

    kp = KeypointSet(_sort(endpoints), _sort(junctions))
    logger.debug("Detected %d endpoints, %d junctions" % kp.counts())
    return kp
