# Copyright (c) 2026 strokemark developers
# MIT License

"""
Target point estimation: where to move the handle point so that its gap
to the reference point encodes the bit.

The gap is measured along the *gap axis* (lambda-axis): X if
``d_x <= d_y``, else Y, with ``d_x = |x_h - x_r|`` and
``d_y = |y_h - y_r|``.  A gap larger than ``t_embed`` decodes as 1.

The handle moves along its stroke direction ``V`` (unit vector from the
skeleton point ``r_h`` pixels inside the stroke toward the handle), i.e.
the stroke is elongated (``+V``) or shortened (``-V``).  The orientation
is the one whose gap-axis component points toward the reference for bit
0 and away from it for bit 1, and the magnitude ``D`` makes the gap
reach ``max(0, t_embed - margin)`` (bit 0) or ``t_embed + margin``
(bit 1).
"""

import logging
import math
from collections import namedtuple

import numpy as np

from .errors import EmbedInfeasible, NonEmbeddable
from .skeleton import walk_from


logger = logging.getLogger(__name__)

AXIS_X = "X"
AXIS_Y = "Y"


EmbedGeometry = namedtuple("EmbedGeometry", [
    "d_x", "d_y", "axis", "delta", "V", "H", "theta", "P_k",
])
EmbedGeometry.__doc__ = """
The geometry of one handle/reference pair.

d_x, d_y : int
    Absolute coordinate differences of the handle and the reference.
axis : str
    The gap axis, ``"X"`` or ``"Y"``.
delta : int
    The gap ``min(d_x, d_y)``.
V : (float, float)
    Unit stroke direction at the handle, pointing out of the stroke.
H : (int, int)
    Vector from the handle to the reference.
theta : float
    Angle of ``V`` in [0, 2*pi), measured counter-clockwise from the
    positive x-axis with the image y-axis flipped upward.
P_k : (int, int)
    The skeleton point ``r_h`` pixels inside the stroke.
"""

TargetPlan = namedtuple("TargetPlan", [
    "bit", "moved", "target", "distance", "direction", "geometry",
])
TargetPlan.__doc__ = """
The planned movement.

bit : int
moved : bool
    ``False`` if the current gap already encodes the bit.
target : (int, int)
    The target point ``P_t`` (the handle itself when not moved).
distance : float
    The movement magnitude ``D`` along the stroke direction.
direction : int
    +1 to elongate the stroke (along ``V``), -1 to shorten it.
geometry : `EmbedGeometry`
"""


def gap_axis(d_x, d_y):
    return AXIS_X if d_x <= d_y else AXIS_Y


def measure_gap(p, q):
    """
    The gap and gap axis of the points ``p`` and ``q``.

    Returns
    -------
    gap : int
    axis : str
    """
    d_x = abs(int(p[0]) - int(q[0]))
    d_y = abs(int(p[1]) - int(q[1]))
    axis = gap_axis(d_x, d_y)
    return (min(d_x, d_y), axis)


def _lam(axis):
    return 0 if axis == AXIS_X else 1


def geometry_of(handle, reference, ske, r_h, deg=None):
    """
    Compute the embedding geometry of the handle/reference pair.

    Parameters
    ----------
    handle, reference : (x, y) or `~strokemark.keypoints.Keypoint`
    ske : 2D bool `~numpy.ndarray`
        The skeleton; ``handle`` must be one of its endpoints.
    r_h : int
        Arc distance of ``P_k`` from the handle.

    Raises
    ------
    NonEmbeddable :
        The walk along the stroke does not move (``P_k = P_h``).
    ContractError :
        The handle is not a skeleton endpoint.
    """
    x_h, y_h = int(handle[0]), int(handle[1])
    x_r, y_r = int(reference[0]), int(reference[1])
    d_x, d_y = abs(x_h - x_r), abs(y_h - y_r)
    axis = gap_axis(d_x, d_y)
    P_k = walk_from(ske, (x_h, y_h), r_h, deg=deg)
    raw = (x_h - P_k[0], y_h - P_k[1])
    norm = math.hypot(*raw)
    if norm == 0:
        raise NonEmbeddable("degenerate stroke direction at (%d, %d)"
                            % (x_h, y_h))
    V = (raw[0] / norm, raw[1] / norm)
    theta = math.atan2(-V[1], V[0]) % (2 * math.pi)
    return EmbedGeometry(d_x, d_y, axis, min(d_x, d_y), V,
                         (x_r - x_h, y_r - y_h), theta, P_k)


def _round_point(x, y):
    return (int(np.floor(x + 0.5)), int(np.floor(y + 0.5)))


def _sign(v):
    return (v > 0) - (v < 0)


def clamp_point(p, shape):
    """Clamp the point (x, y) into the image of the given shape."""
    return (min(max(int(p[0]), 0), shape[1] - 1),
            min(max(int(p[1]), 0), shape[0] - 1))


def plan_target(geom, handle, reference, bit, t_embed, margin,
                shape=None, fixed_distance=0.0, min_stroke_vector=0.05,
                stroke_length=None):
    """
    Plan the movement of the handle point to encode ``bit``.

    Parameters
    ----------
    geom : `EmbedGeometry`
    handle, reference : (x, y)
    bit : int
        0 or 1.
    t_embed : int
        The decision threshold.
    margin : int
        Margin of the achieved gap from the threshold.
    shape : (H, W), optional
        Image shape; the target is clamped inside, and the gap is
        checked again at the clamped target.
    fixed_distance : float, optional
        If positive, move by this fixed magnitude (no gap guarantee).
    min_stroke_vector : float, optional
        Minimum |V| component along the gap axis.
    stroke_length : int, optional
        Number of skeleton pixels of the handle's stroke (far node
        included); a shortening must leave three of them.

    Returns
    -------
    plan : `TargetPlan`

    Raises
    ------
    EmbedInfeasible :
        The stroke is (nearly) perpendicular to the gap axis, the
        shortening consumes the stroke, or the rounded and clamped
        target misses the required gap.
    """
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1, got %r" % (bit,))
    if not t_embed > margin >= 1:
        raise ValueError("require t_embed > margin >= 1")
    x_h, y_h = int(handle[0]), int(handle[1])
    x_r, y_r = int(reference[0]), int(reference[1])
    delta = geom.delta

    if (bit == 0 and delta <= t_embed) or (bit == 1 and delta > t_embed):
        return TargetPlan(bit, False, (x_h, y_h), 0.0, 0, geom)

    lam = _lam(geom.axis)
    v_lam = geom.V[lam]
    h_lam = geom.H[lam]
    if abs(v_lam) < min_stroke_vector:
        raise EmbedInfeasible("stroke nearly perpendicular to the gap axis "
                              "(|V_%s| = %.3f)" % (geom.axis.lower(),
                                                   abs(v_lam)))

    if h_lam != 0:
        # Toward the reference (bit 0) or away from it (bit 1)
        want = _sign(h_lam) if bit == 0 else -_sign(h_lam)
        direction = want * _sign(v_lam)
    elif geom.axis == AXIS_X:
        # Zero gap: elongate the stroke
        direction = 1
    else:
        direction = 1 if geom.theta < math.pi else -1

    if bit == 0:
        goal = max(0, t_embed - margin)
    else:
        goal = t_embed + margin
    if fixed_distance > 0:
        distance = float(fixed_distance)
    else:
        distance = abs(delta - goal) / abs(v_lam)

    x_t = x_h + direction * distance * geom.V[0]
    y_t = y_h + direction * distance * geom.V[1]
    target = _round_point(x_t, y_t)
    if shape is not None:
        target = clamp_point(target, shape)
    # A shortening keeps the last three pixels before the far node
    if (direction < 0 and stroke_length is not None and
            distance > stroke_length - 4):
        raise EmbedInfeasible("shortening by %.1f consumes the stroke "
                              "(%d pixels)" % (distance, stroke_length))

    if fixed_distance <= 0:
        gap = abs(target[lam] - (x_r, y_r)[lam])
        # One pixel of rounding slack, never across the threshold
        if bit == 0 and gap > min(t_embed, t_embed - margin + 1):
            raise EmbedInfeasible("rounded target gap %d misses bit 0" % gap)
        if bit == 1 and gap < max(t_embed + 1, t_embed + margin - 1):
            raise EmbedInfeasible("rounded target gap %d misses bit 1" % gap)

    plan = TargetPlan(bit, True, target, distance, direction, geom)
    logger.debug("Planned target (%d, %d): D=%.2f, direction=%+d, axis=%s"
                 % (target[0], target[1], distance, direction, geom.axis))
    return plan


def random_target(handle, bit, t_embed, margin, rng, shape=None):
    """
    Random target (ablation): a random direction and a random magnitude
    up to ``t_embed + margin``.
    """
    angle = rng.uniform(0, 2 * math.pi)
    distance = rng.uniform(1, t_embed + margin)
    x_h, y_h = int(handle[0]), int(handle[1])
    target = _round_point(x_h + distance * math.cos(angle),
                          y_h + distance * math.sin(angle))
    if shape is not None:
        target = clamp_point(target, shape)
    return target
