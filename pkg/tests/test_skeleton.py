# Copyright (c) 2026 strokemark developers
# MIT License

import numpy as np
import pytest
from scipy import ndimage

from strokemark.errors import ContractError
from strokemark.keypoints import detect
from strokemark.skeleton import (build_stroke_graph, degree_map, prune_spurs,
                                 same_stroke, stroke_width_at, thin,
                                 walk_from)

from conftest import bar, blank, skeleton_of


STRUCT8 = np.ones((3, 3), dtype=bool)


def _ncomponents(mask):
    return ndimage.label(mask, structure=STRUCT8)[1]


def test_thin_horizontal_bar():
    glyph = blank(12, 30)
    glyph[5:8, 5:25] = 0
    ske = thin(glyph)
    ys, xs = np.nonzero(ske)
    assert 16 <= len(xs) <= 20
    assert set(ys.tolist()) == {6}
    assert np.all(degree_map(ske)[ske] <= 2)


def test_thin_single_pixel():
    glyph = blank(5, 5)
    glyph[2, 2] = 0
    ske = thin(glyph)
    assert ske.sum() == 1 and ske[2, 2]


def test_thin_empty():
    assert not thin(blank(6, 6)).any()


def test_thin_square_connected():
    glyph = blank(21, 21)
    glyph[5:16, 5:16] = 0
    ske = thin(glyph)
    assert ske.any()
    assert _ncomponents(ske) == 1
    # A subset of the text pixels
    assert np.all(glyph[ske] == 0)


def test_thin_keeps_topology():
    glyph = blank(40, 40)
    glyph[5:35, 5:35] = 0
    glyph[12:28, 12:28] = 255
    ske = thin(glyph)
    assert _ncomponents(ske) == 1
    holes = ndimage.label(~ske)[1]
    assert holes == 2


def test_prune_spurs():
    pixels = [(x, 10) for x in range(2, 30)] + [(15, 11), (15, 12)]
    ske = skeleton_of(20, 32, pixels)
    pruned = prune_spurs(ske, length=4)
    assert not pruned[12, 15]
    kp = detect(pruned)
    assert len(kp.endpoints) == 2
    assert len(kp.junctions) == 0


def test_prune_keeps_whole_strokes():
    pixels = [(x, 5) for x in range(2, 5)]
    ske = skeleton_of(10, 10, pixels)
    assert np.array_equal(prune_spurs(ske, length=10), ske)


def test_graph_l(l_skeleton):
    kp = detect(l_skeleton)
    assert [(k.x, k.y) for k in kp.endpoints] == [(5, 0), (12, 10)]
    assert kp.junctions == ()
    graph = build_stroke_graph(l_skeleton, kp)
    assert len(graph.nodes) == 2
    assert len(graph.edges) == 1
    assert {graph.edges[0].u, graph.edges[0].v} == {0, 1}


def test_graph_t(t_skeleton):
    kp = detect(t_skeleton)
    graph = build_stroke_graph(t_skeleton, kp)
    assert len(graph.edges) == 3
    j = graph.node_index((5, 0))
    assert all(j in (e.u, e.v) for e in graph.edges)


def test_graph_o(o_skeleton):
    kp = detect(o_skeleton)
    graph = build_stroke_graph(o_skeleton, kp)
    assert graph.nodes == []
    assert len(graph.edges) == 1
    e = graph.edges[0]
    assert e.u is None and e.v is None
    assert len(e.path) == int(o_skeleton.sum())


def test_graph_rejects_foreign_keypoint(l_skeleton, t_skeleton):
    with pytest.raises(ContractError):
        build_stroke_graph(l_skeleton, detect(t_skeleton))


def test_graph_roundtrip_pixels(t_skeleton):
    graph = build_stroke_graph(t_skeleton, detect(t_skeleton))
    assert np.array_equal(graph.skeleton_mask(t_skeleton.shape), t_skeleton)


def test_same_stroke(t_skeleton):
    graph = build_stroke_graph(t_skeleton, detect(t_skeleton))
    assert same_stroke((0, 0), (5, 0), graph)
    assert not same_stroke((0, 0), (10, 0), graph)
    assert same_stroke((0, 0), (0, 0), graph)
    with pytest.raises(ContractError):
        same_stroke((0, 0), (3, 3), graph)


def test_stroke_path(l_skeleton):
    graph = build_stroke_graph(l_skeleton, detect(l_skeleton))
    path = graph.stroke_path((5, 0))
    assert path[0] == (5, 0)
    assert path[-1] == (12, 10)
    assert len(path) == int(l_skeleton.sum())


def test_walk_straight():
    ske = skeleton_of(5, 30, [(x, 2) for x in range(10, 25)])
    assert walk_from(ske, (10, 2), 5) == (15, 2)


def test_walk_clamped():
    ske = skeleton_of(5, 10, [(2, 2), (3, 2), (4, 2)])
    assert walk_from(ske, (2, 2), 10) == (4, 2)


def test_walk_around_corner(l_skeleton):
    p = walk_from(l_skeleton, (5, 0), 12)
    assert p[1] == 10 and p[0] > 5


def test_walk_not_endpoint(l_skeleton):
    with pytest.raises(ContractError):
        walk_from(l_skeleton, (5, 4), 3)


def test_stroke_width():
    glyph = bar(20, 40, (5, 10), (35, 10), 5)
    assert abs(stroke_width_at(glyph, (20, 10)) - 5) <= 1
    assert stroke_width_at(glyph, (20, 1)) == 0


def test_stroke_width_single_pixel():
    glyph = blank(5, 5)
    glyph[2, 2] = 0
    assert stroke_width_at(glyph, (2, 2)) == 2
