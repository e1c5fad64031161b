# Copyright (c) 2026 strokemark developers
# MIT License

import numpy as np

from strokemark.utils.draw import capsule, disk, polyline, rectangle


def _image(rr, cc, shape):
    img = np.zeros(shape, dtype=bool)
    img[rr, cc] = True
    return img


def test_disk():
    rr, cc = disk((5, 5), 2)
    img = _image(rr, cc, (11, 11))
    assert img[5, 5] and img[5, 7] and img[3, 5]
    assert not img[3, 3]
    assert img.sum() == 13


def test_disk_small_radius():
    rr, cc = disk((4, 3), 0.1)
    assert list(zip(rr, cc)) == [(3, 4)]


def test_disk_clipped():
    rr, cc = disk((0, 0), 3, shape=(10, 10))
    assert rr.min() >= 0 and cc.min() >= 0


def test_capsule():
    rr, cc = capsule((3, 5), (12, 5), 1.5, shape=(11, 16))
    img = _image(rr, cc, (11, 16))
    # Rows 4..6 covered along the whole segment
    assert img[4:7, 3:13].all()
    assert not img[2, 7] and not img[8, 7]
    # Round caps
    assert img[5, 2] and img[5, 13]
    assert not img[3, 1]
    assert len(set(zip(rr, cc))) == len(rr)


def test_capsule_degenerate():
    r0, c0 = capsule((5, 5), (5, 5), 2)
    r1, c1 = disk((5, 5), 2)
    assert sorted(zip(r0, c0)) == sorted(zip(r1, c1))


def test_polyline_joins():
    rr, cc = polyline([(2, 2), (2, 10), (10, 10)], 1, shape=(14, 14))
    img = _image(rr, cc, (14, 14))
    assert img[2:11, 2].all()
    assert img[10, 2:11].all()
    assert not img[2, 10]


def test_rectangle():
    rr, cc = rectangle(2, 4, 1, 3, shape=(10, 10))
    img = _image(rr, cc, (10, 10))
    assert img.sum() == 9
    assert img[1:4, 2:5].all()


def test_rectangle_clamped():
    rr, cc = rectangle(-5, 3, 8, 20, shape=(10, 10))
    img = _image(rr, cc, (10, 10))
    assert img[8:10, 0:4].all()
    assert img.sum() == 8
    rr, cc = rectangle(12, 15, 0, 3, shape=(10, 10))
    assert len(rr) == 0
