# Copyright (c) 2026 strokemark developers
# MIT License

import numpy as np

from strokemark.keypoints import ENDPOINT, JUNCTION, cluster_junctions, detect

from conftest import skeleton_of


def test_detect_line():
    ske = skeleton_of(5, 12, [(x, 2) for x in range(1, 11)])
    kp = detect(ske)
    assert kp.counts() == (2, 0)
    assert [(k.x, k.y) for k in kp.endpoints] == [(1, 2), (10, 2)]
    assert all(k.kind == ENDPOINT for k in kp.endpoints)


def test_detect_t(t_skeleton):
    kp = detect(t_skeleton)
    assert kp.counts() == (3, 1)
    assert [(k.x, k.y) for k in kp.endpoints] == [(0, 0), (10, 0), (5, 10)]
    j = kp.junctions[0]
    assert (j.x, j.y) == (5, 0)
    assert j.kind == JUNCTION
    assert set(j.pixels) == {(4, 0), (5, 0), (6, 0), (5, 1)}


def test_detect_loop(o_skeleton):
    kp = detect(o_skeleton)
    assert kp.counts() == (0, 0)
    assert len(kp) == 0


def test_detect_empty():
    assert detect(np.zeros((4, 4), dtype=bool)).counts() == (0, 0)


def test_all_sorted(t_skeleton):
    kp = detect(t_skeleton)
    assert [(k.x, k.y) for k in kp.all] == [(0, 0), (5, 0), (10, 0),
                                            (5, 10)]


def test_cluster_junctions():
    groups = cluster_junctions([(0, 0), (2, 1), (10, 10), (4, 3)])
    groups = sorted(sorted(g) for g in groups)
    assert groups == [[(0, 0), (2, 1), (4, 3)], [(10, 10)]]
    assert cluster_junctions([]) == []
