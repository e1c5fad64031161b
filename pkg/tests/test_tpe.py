# Copyright (c) 2026 strokemark developers
# MIT License

import math

import numpy as np
import pytest

from strokemark.errors import EmbedInfeasible
from strokemark.tpe import (AXIS_X, AXIS_Y, EmbedGeometry, geometry_of,
                            measure_gap, plan_target, random_target)

from conftest import skeleton_of


def _geom(handle, reference, V):
    d_x = abs(handle[0] - reference[0])
    d_y = abs(handle[1] - reference[1])
    axis = AXIS_X if d_x <= d_y else AXIS_Y
    theta = math.atan2(-V[1], V[0]) % (2 * math.pi)
    return EmbedGeometry(d_x, d_y, axis, min(d_x, d_y), V,
                         (reference[0] - handle[0],
                          reference[1] - handle[1]), theta, handle)


def test_measure_gap():
    assert measure_gap((10, 10), (13, 17)) == (3, AXIS_X)
    assert measure_gap((10, 10), (17, 13)) == (3, AXIS_Y)
    # Ties go to the X axis
    assert measure_gap((0, 0), (4, 4)) == (4, AXIS_X)


def test_geometry_horizontal_stroke():
    ske = skeleton_of(20, 40, [(x, 10) for x in range(10, 31)])
    geom = geometry_of((10, 10), (13, 17), ske, r_h=5)
    assert (geom.d_x, geom.d_y, geom.axis, geom.delta) == (3, 7, AXIS_X, 3)
    assert geom.P_k == (15, 10)
    assert geom.V == pytest.approx((-1.0, 0.0))
    assert geom.theta == pytest.approx(math.pi)
    assert geom.H == (3, 7)


def test_plan_no_move():
    geom = _geom((50, 50), (54, 70), (1.0, 0.0))
    plan = plan_target(geom, (50, 50), (54, 70), 0, t_embed=10, margin=5)
    assert not plan.moved
    assert plan.target == (50, 50)
    assert plan.distance == 0


def test_plan_bit1_away_from_reference():
    handle, reference = (50, 50), (46, 70)
    geom = _geom(handle, reference, (1.0, 0.0))
    plan = plan_target(geom, handle, reference, 1, t_embed=10, margin=5)
    assert plan.moved
    assert plan.direction == 1
    assert plan.distance == pytest.approx(11)
    assert plan.target == (61, 50)
    assert measure_gap(plan.target, reference) == (15, AXIS_X)


def test_plan_bit1_zero_gap_elongates():
    handle, reference = (50, 50), (80, 50)
    s = math.sqrt(0.5)
    geom = _geom(handle, reference, (s, -s))
    assert geom.axis == AXIS_Y and geom.delta == 0
    plan = plan_target(geom, handle, reference, 1, t_embed=10, margin=5)
    assert plan.direction == 1
    assert plan.target == (65, 35)
    assert abs(plan.target[1] - reference[1]) == 15


def test_plan_bit0_toward_reference():
    handle, reference = (50, 50), (30, 80)
    geom = _geom(handle, reference, (-1.0, 0.0))
    plan = plan_target(geom, handle, reference, 0, t_embed=10, margin=5)
    assert plan.target == (35, 50)
    assert measure_gap(plan.target, reference)[0] == 5


def test_plan_perpendicular_stroke():
    handle, reference = (50, 50), (46, 70)
    geom = _geom(handle, reference, (0.0, 1.0))
    with pytest.raises(EmbedInfeasible, match="perpendicular"):
        plan_target(geom, handle, reference, 1, t_embed=10, margin=5)


def test_plan_target_clamped_to_image():
    handle, reference = (50, 50), (40, 70)
    geom = _geom(handle, reference, (1.0, 0.0))
    plan = plan_target(geom, handle, reference, 1, t_embed=10, margin=5)
    assert plan.target == (55, 50)
    # One column short: clamped, and the gap 14 is still within tolerance
    plan = plan_target(geom, handle, reference, 1, t_embed=10, margin=5,
                       shape=(60, 55))
    assert plan.target == (54, 50)
    assert measure_gap(plan.target, reference) == (14, AXIS_X)


def test_plan_clamped_target_misses_gap():
    handle, reference = (50, 50), (40, 70)
    geom = _geom(handle, reference, (1.0, 0.0))
    with pytest.raises(EmbedInfeasible, match="misses bit 1"):
        plan_target(geom, handle, reference, 1, t_embed=10, margin=5,
                    shape=(60, 53))


def test_plan_shortening_consumes_stroke():
    handle, reference = (50, 50), (30, 80)
    geom = _geom(handle, reference, (1.0, 0.0))
    with pytest.raises(EmbedInfeasible, match="consumes"):
        plan_target(geom, handle, reference, 0, t_embed=10, margin=5,
                    stroke_length=10)


def test_plan_bad_arguments():
    geom = _geom((50, 50), (46, 70), (1.0, 0.0))
    with pytest.raises(ValueError):
        plan_target(geom, (50, 50), (46, 70), 1, t_embed=5, margin=5)
    with pytest.raises(ValueError):
        plan_target(geom, (50, 50), (46, 70), 1, t_embed=10, margin=0)
    with pytest.raises(ValueError):
        plan_target(geom, (50, 50), (46, 70), 2, t_embed=10, margin=5)


def test_plan_fixed_distance():
    handle, reference = (50, 50), (46, 70)
    geom = _geom(handle, reference, (1.0, 0.0))
    plan = plan_target(geom, handle, reference, 1, t_embed=10, margin=5,
                       fixed_distance=3)
    assert plan.distance == 3
    assert plan.target == (53, 50)


def test_random_target_clipped():
    rng = np.random.default_rng(7)
    for __ in range(20):
        x, y = random_target((1, 1), 1, 10, 5, rng, shape=(8, 8))
        assert 0 <= x < 8 and 0 <= y < 8


def test_plan_margin_one_keeps_threshold():
    handle, reference = (50, 50), (47, 70)
    geom = _geom(handle, reference, (1.0, 0.0))
    plan = plan_target(geom, handle, reference, 1, t_embed=3, margin=1)
    assert plan.target == (51, 50)
    # Clamped back onto the threshold: decodes as 0, rejected
    with pytest.raises(EmbedInfeasible, match="misses bit 1"):
        plan_target(geom, handle, reference, 1, t_embed=3, margin=1,
                    shape=(60, 51))
