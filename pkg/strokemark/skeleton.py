# Copyright (c) 2026 strokemark developers
# MIT License

"""
Glyph thinning and stroke-level structure.

thin :
    One-pixel-wide, 8-connected skeleton of a binary glyph (Zhang-Suen
    thinning followed by a staircase clean-up pass).
prune_spurs :
    Remove short side branches left by the thinning.
build_stroke_graph :
    Decompose the skeleton into keypoint nodes and stroke edges.
same_stroke / walk_from / stroke_width_at :
    The stroke queries needed by the handle selection and target
    estimation.

A skeleton is a 2D boolean array (``True`` on the skeleton).
"""

import logging
from collections import namedtuple

import numpy as np
from scipy import ndimage
from skimage.morphology import skeletonize

from .errors import ContractError
from .raster import text_mask


logger = logging.getLogger(__name__)

# Neighbor offsets (dy, dx): the 4-neighbors first, then the diagonals
OFFSETS4 = ((-1, 0), (0, 1), (1, 0), (0, -1))
OFFSETS8 = OFFSETS4 + ((-1, 1), (1, 1), (1, -1), (-1, -1))

# Perpendicular pairs of 4-neighbors forming a staircase corner
_CORNERS = (((-1, 0), (0, 1)), ((0, 1), (1, 0)),
            ((1, 0), (0, -1)), ((0, -1), (-1, 0)))

_KERNEL = np.array([[1, 1, 1],
                    [1, 0, 1],
                    [1, 1, 1]], dtype=np.int32)


def degree_map(ske):
    """
    Number of 8-connected skeleton neighbors of every skeleton pixel
    (zero off the skeleton).
    """
    ske = np.asarray(ske, dtype=bool)
    deg = ndimage.convolve(ske.astype(np.int32), _KERNEL, mode="constant",
                           cval=0)
    deg[~ske] = 0
    return deg


def neighbors(ske, x, y):
    """
    Skeleton 8-neighbors of pixel ``(x, y)``, 4-neighbors listed first.
    """
    h, w = ske.shape
    result = []
    for dy, dx in OFFSETS8:
        yy, xx = y + dy, x + dx
        if 0 <= yy < h and 0 <= xx < w and ske[yy, xx]:
            result.append((xx, yy))
    return result


def _ring_is_connected(ske, x, y):
    """
    Whether the skeleton pixels in the 3x3 ring around ``(x, y)`` form a
    single 8-connected group (i.e., removing the center keeps the local
    connectivity).
    """
    h, w = ske.shape
    ring = [(x+dx, y+dy) for dy, dx in OFFSETS8
            if 0 <= y+dy < h and 0 <= x+dx < w and ske[y+dy, x+dx]]
    if not ring:
        return False
    seen = {ring[0]}
    stack = [ring[0]]
    members = set(ring)
    while stack:
        px, py = stack.pop()
        for q in members:
            if q not in seen and max(abs(q[0]-px), abs(q[1]-py)) == 1:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(members)


def remove_staircases(ske):
    """
    Remove the staircase corners left by the thinning: a pixel whose only
    4-neighbors are a perpendicular pair, and whose removal keeps its
    neighbors 8-connected, is redundant.

    The pass is sequential in raster order, so that at most one pixel of
    every corner is removed.
    """
    ske = np.array(ske, dtype=bool)
    h, w = ske.shape
    ys, xs = np.nonzero(ske)
    for y, x in zip(ys, xs):
        four = [(dy, dx) for dy, dx in OFFSETS4
                if 0 <= y+dy < h and 0 <= x+dx < w and ske[y+dy, x+dx]]
        if len(four) != 2:
            continue
        if (tuple(four) not in _CORNERS and
                tuple(reversed(four)) not in _CORNERS):
            continue
        if _ring_is_connected(ske, x, y):
            ske[y, x] = False
    return ske


def thin(glyph):
    """
    Thin the binary glyph to a one-pixel-wide skeleton.

    The skeleton is a subset of the text pixels, preserving the number of
    connected components and holes of the glyph.  An empty glyph gives an
    empty skeleton.

    Parameters
    ----------
    glyph : 2D ``uint8`` `~numpy.ndarray`
        Binary glyph (0 = text).

    Returns
    -------
    ske : 2D bool `~numpy.ndarray`
    """
    mask = text_mask(glyph)
    if not mask.any():
        return np.zeros(mask.shape, dtype=bool)
    # NOTE: pad so that strokes touching the border are thinned alike
    padded = np.pad(mask, 1, mode="constant", constant_values=False)
    ske = skeletonize(padded)[1:-1, 1:-1]
    return remove_staircases(ske)


def spur_length(shape):
    """Default spur length threshold: max(3, 2% of the shortest edge)."""
    return max(3, int(round(0.02 * min(shape))))


def _trace_branch(ske, deg, start):
    """
    Follow the skeleton from an endpoint until a junction pixel (degree
    >= 3) or another endpoint is met.

    Returns
    -------
    path : list[(x, y)]
        The branch pixels from ``start``, excluding the junction pixel.
    stop : (x, y) or None
        The junction pixel, or ``None`` if the branch ends at an endpoint.
    """
    path = [start]
    visited = {start}
    cur = start
    while True:
        nxt = [q for q in neighbors(ske, *cur) if q not in visited]
        if not nxt:
            return (path, None)
        junctions = [q for q in nxt if deg[q[1], q[0]] >= 3]
        if junctions:
            return (path, junctions[0])
        cur = nxt[0]
        if deg[cur[1], cur[0]] == 1:
            path.append(cur)
            return (path, None)
        visited.add(cur)
        path.append(cur)


def prune_spurs(ske, length=None):
    """
    Remove the side branches shorter than ``length`` pixels.

    A spur is a branch running from an endpoint to a junction; the
    shortest spur is removed first, and only while its junction keeps at
    least three branches, then the degrees are recomputed.  Branches
    between two endpoints (whole strokes) are never removed.

    Parameters
    ----------
    ske : 2D bool `~numpy.ndarray`
        The thinned skeleton.
    length : int, optional
        Spur length threshold; default ``spur_length(ske.shape)``.
    """
    ske = np.array(ske, dtype=bool)
    if length is None:
        length = spur_length(ske.shape)
    removed = 0
    while True:
        deg = degree_map(ske)
        candidates = []
        ys, xs = np.nonzero(deg == 1)
        for y, x in zip(ys, xs):
            path, junction = _trace_branch(ske, deg, (x, y))
            if junction is None or len(path) >= length:
                continue
            if deg[junction[1], junction[0]] < 3:
                continue
            candidates.append((len(path), y, x, path, junction))
        if not candidates:
            break
        candidates.sort(key=lambda c: c[:3])
        __, __, __, path, (jx, jy) = candidates[0]
        for (px, py) in path:
            ske[py, px] = False
        # A junction pixel left as a nub beside the stroke goes too
        if (len(neighbors(ske, jx, jy)) >= 2 and
                _ring_is_connected(ske, jx, jy)):
            ske[jy, jx] = False
        removed += 1
    if removed:
        ske = remove_staircases(ske)
        logger.debug("Pruned %d spurs (length < %d)" % (removed, length))
    return ske


Edge = namedtuple("Edge", ["u", "v", "path"])
Edge.__doc__ = """
A stroke segment of the skeleton.

u, v : int or None
    Indices of the incident nodes; both ``None`` for a closed loop
    without keypoints.
path : list[(x, y)]
    The ordered skeleton pixels strictly between the two nodes (from
    ``u`` to ``v``); empty when the two nodes are adjacent.
"""


class StrokeGraph:
    """
    The skeleton decomposed into keypoints (nodes) and stroke segments
    (edges).

    Attributes
    ----------
    nodes : list[Keypoint]
        Endpoints and junctions; the node index is the list index.
    node_pixels : list[set[(x, y)]]
        Skeleton pixels covered by every node.
    edges : list[Edge]
    adjacency : list[list[int]]
        Indices of the edges incident to every node.
    """
    def __init__(self, nodes, node_pixels, edges):
        self.nodes = list(nodes)
        self.node_pixels = node_pixels
        self.edges = list(edges)
        self.adjacency = [[] for __ in self.nodes]
        for i, e in enumerate(self.edges):
            if e.u is not None:
                self.adjacency[e.u].append(i)
                if e.v != e.u:
                    self.adjacency[e.v].append(i)
        self._index = {(k.x, k.y): i for i, k in enumerate(self.nodes)}

    def node_index(self, p):
        """
        Index of the node at point ``p``.

        Raises
        ------
        ContractError :
            ``p`` is not a node of this graph.
        """
        try:
            return self._index[(int(p[0]), int(p[1]))]
        except KeyError:
            raise ContractError("point %s is not a node of the stroke graph"
                                % (tuple(p),))

    def edges_of(self, p):
        """The edges incident to the node at ``p``."""
        return [self.edges[i] for i in self.adjacency[self.node_index(p)]]

    def stroke_path(self, p):
        """
        Ordered skeleton pixels of the stroke starting at endpoint ``p``:
        ``p`` itself, the edge path, and the first pixel of the node at
        the far end (if any).
        """
        idx = self.node_index(p)
        start = (int(p[0]), int(p[1]))
        edges = self.edges_of(p)
        if not edges:
            return [start]
        e = edges[0]
        if e.u == idx:
            path, far = list(e.path), e.v
        else:
            path, far = list(reversed(e.path)), e.u
        full = [start] + path
        if far is not None and far != idx:
            last = full[-1]
            ends = sorted(self.node_pixels[far],
                          key=lambda q: (max(abs(q[0]-last[0]),
                                             abs(q[1]-last[1])), q[1], q[0]))
            full.append(ends[0])
        return full

    def skeleton_mask(self, shape):
        """Rasterize the node and edge pixels back into a skeleton."""
        ske = np.zeros(shape, dtype=bool)
        for pixels in self.node_pixels:
            for (x, y) in pixels:
                ske[y, x] = True
        for e in self.edges:
            for (x, y) in e.path:
                ske[y, x] = True
        return ske

    def __repr__(self):
        return "<StrokeGraph: %d nodes, %d edges>" % (len(self.nodes),
                                                      len(self.edges))


def _order_loop(pixels):
    """Order the pixels of a closed keypoint-free loop by walking it."""
    pixels = set(pixels)
    start = min(pixels, key=lambda q: (q[1], q[0]))
    path = [start]
    seen = {start}
    cur = start
    while True:
        nxt = [(cur[0]+dx, cur[1]+dy) for dy, dx in OFFSETS8
               if (cur[0]+dx, cur[1]+dy) in pixels and
               (cur[0]+dx, cur[1]+dy) not in seen]
        if not nxt:
            break
        cur = nxt[0]
        seen.add(cur)
        path.append(cur)
    # Pixels off the walk (rare thinning leftovers) are appended
    path.extend(sorted(pixels - seen, key=lambda q: (q[1], q[0])))
    return path


def build_stroke_graph(ske, kp):
    """
    Build the stroke graph from the skeleton and its keypoints.

    Edges are traced from every node along the keypoint-free skeleton
    pixels until another node is reached; adjacent nodes get an edge with
    an empty path; tiny self-loops (at most 3 pixels) touching a junction
    are absorbed into that junction; keypoint-free components become
    closed-loop edges.

    Parameters
    ----------
    ske : 2D bool `~numpy.ndarray`
    kp : `~strokemark.keypoints.KeypointSet`
        The keypoints detected from ``ske``.

    Raises
    ------
    ContractError :
        A keypoint does not lie on the skeleton.
    """
    ske = np.asarray(ske, dtype=bool)
    nodes = list(kp.endpoints) + list(kp.junctions)
    node_pixels = []
    owner = {}
    for i, k in enumerate(nodes):
        pixels = set(k.pixels) if k.pixels else {(k.x, k.y)}
        for (x, y) in pixels:
            if not (0 <= y < ske.shape[0] and 0 <= x < ske.shape[1] and
                    ske[y, x]):
                raise ContractError("keypoint (%d, %d) is not on the "
                                    "skeleton" % (k.x, k.y))
            owner[(x, y)] = i
        node_pixels.append(pixels)

    edges = []
    linked = set()
    visited = set()
    for i, pixels in enumerate(node_pixels):
        for start in sorted(pixels, key=lambda q: (q[1], q[0])):
            for q in neighbors(ske, *start):
                j = owner.get(q)
                if j is not None:
                    if j != i and (min(i, j), max(i, j)) not in linked:
                        linked.add((min(i, j), max(i, j)))
                        edges.append(Edge(i, j, []))
                    continue
                if q in visited:
                    continue
                edge = _trace_edge(ske, owner, visited, i, start, q)
                if edge is not None:
                    edges.append(edge)

    # Keypoint-free leftovers: closed loops, or pixels to absorb
    rest = ske.copy()
    for (x, y) in list(visited) + list(owner):
        rest[y, x] = False
    labels, num = ndimage.label(rest, structure=np.ones((3, 3), dtype=bool))
    for lab in range(1, num+1):
        ys, xs = np.nonzero(labels == lab)
        pixels = list(zip(xs.tolist(), ys.tolist()))
        touching = sorted({owner[q] for p in pixels
                           for q in neighbors(ske, *p) if q in owner})
        if touching:
            node_pixels[touching[0]].update(pixels)
            for p in pixels:
                owner[p] = touching[0]
        else:
            edges.append(Edge(None, None, _order_loop(pixels)))

    graph = StrokeGraph(nodes, node_pixels, edges)
    logger.debug("Built %r" % graph)
    return graph


def _trace_edge(ske, owner, visited, i, start, first):
    """
    Trace one edge from node ``i`` (leaving it at pixel ``start``) through
    pixel ``first`` until another node is reached.
    """
    path = [first]
    local = {first}
    cur = first
    prev = start
    while True:
        cand = [q for q in neighbors(ske, *cur) if q != prev]
        hits = [q for q in cand if q in owner and
                (owner[q] != i or len(path) > 3)]
        if hits:
            # Prefer reaching another node over closing a loop
            hits.sort(key=lambda q: owner[q] == i)
            j = owner[hits[0]]
            for p in path:
                visited.add(p)
            return Edge(i, j, path)
        nxt = [q for q in cand if q not in owner and q not in local and
               q not in visited]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        local.add(cur)
        path.append(cur)
    # Dead end without reaching a node: left to the leftovers pass
    return None


def same_stroke(p, q, graph):
    """
    Whether the nodes ``p`` and ``q`` lie on the same stroke, i.e., some
    single edge is incident to both.  Reflexive: ``same_stroke(p, p)``.

    Raises
    ------
    ContractError :
        ``p`` or ``q`` is not a node of the graph.
    """
    i = graph.node_index(p)
    j = graph.node_index(q)
    if i == j:
        return True
    for k in graph.adjacency[i]:
        e = graph.edges[k]
        if {e.u, e.v} == {i, j}:
            return True
    return False


def walk_from(ske, start, steps, deg=None):
    """
    Walk along the skeleton from the endpoint ``start``.

    Parameters
    ----------
    ske : 2D bool `~numpy.ndarray`
    start : (x, y)
        A skeleton endpoint (exactly one skeleton neighbor).
    steps : int
        Number of pixel steps to walk (``r_h``).
    deg : 2D `~numpy.ndarray`, optional
        Precomputed ``degree_map(ske)``.

    Returns
    -------
    point : (x, y)
        The pixel reached after ``steps`` steps, or earlier if the path
        ends or reaches a junction pixel (which is then returned).

    Raises
    ------
    ContractError :
        ``start`` is not a skeleton endpoint.
    """
    ske = np.asarray(ske, dtype=bool)
    if deg is None:
        deg = degree_map(ske)
    x, y = int(start[0]), int(start[1])
    if not (0 <= y < ske.shape[0] and 0 <= x < ske.shape[1]) or \
            deg[y, x] != 1:
        raise ContractError("walk start (%d, %d) is not a skeleton endpoint"
                            % (x, y))
    cur = (x, y)
    visited = {cur}
    for __ in range(int(steps)):
        nxt = [q for q in neighbors(ske, *cur) if q not in visited]
        if not nxt:
            break
        cur = nxt[0]
        visited.add(cur)
        if deg[cur[1], cur[0]] >= 3:
            break
    return cur


def width_map(glyph):
    """
    Local stroke thickness of every pixel: twice the Euclidean distance
    to the nearest background pixel (zero on the background).  The image
    border counts as background.
    """
    mask = np.pad(text_mask(glyph), 1, mode="constant",
                  constant_values=False)
    return 2.0 * ndimage.distance_transform_edt(mask)[1:-1, 1:-1]


def stroke_width_at(glyph, p):
    """
    Stroke thickness estimate at point ``p``: twice the distance to the
    nearest background pixel; 0 if ``p`` is on the background.
    """
    x, y = int(p[0]), int(p[1])
    glyph = np.asarray(glyph)
    if not (0 <= y < glyph.shape[0] and 0 <= x < glyph.shape[1]):
        return 0.0
    return float(width_map(glyph)[y, x])
