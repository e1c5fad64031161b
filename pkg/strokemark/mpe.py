# Copyright (c) 2026 strokemark developers
# MIT License

"""
Movement probability evaluator: deterministically select the handle point
(the endpoint to be moved) and its reference point.

For every endpoint ``p``, the reference set holds the other keypoints
inside the box ``[x-tau, x+tau] x [y-tau, y+tau]``.  Every reference
scores 1, plus 1 if it lies on a different stroke than ``p``; among the
references scoring 2, the topmost one (smallest ``y``, then smallest
``x``) gets another 1.  The best reference of ``p`` is the highest
scoring one, and the handle is the endpoint with the highest best score.
All ties are broken by the smallest ``(y, x)``.
"""

import logging
from collections import namedtuple

from .errors import NonEmbeddable
from .params import MPERules
from .skeleton import same_stroke


logger = logging.getLogger(__name__)


ScoredTriple = namedtuple("ScoredTriple",
                          ["endpoint", "reference", "score"])
ScoredTriple.__doc__ = """
The best reference (``None`` if the reference set is empty) of one
candidate and its score in {0, 1, 2, 3}.
"""

HandleSelection = namedtuple("HandleSelection",
                             ["handle", "reference", "score", "trace"])
HandleSelection.__doc__ = """
The selected handle point ``P_h``, reference point ``P_r``, the score
and the full list of scored candidates.
"""


def _yx(k):
    return (k.y, k.x)


def reference_set(p, kp, tau):
    """
    The keypoints other than ``p`` (endpoints or junctions) within the
    ``tau`` box around ``p``, ordered by ``(y, x)``.
    """
    result = [k for k in kp.all
              if (k.x, k.y) != (p.x, p.y) and
              abs(k.x - p.x) <= tau and abs(k.y - p.y) <= tau]
    return sorted(result, key=_yx)


def _pick(candidates, rng):
    """
    One of the tied candidates: the topmost, or a random one when the
    y-priority rule is off.
    """
    if rng is None or len(candidates) == 1:
        return min(candidates, key=_yx)
    return candidates[int(rng.integers(len(candidates)))]


def score_references(p, refs, graph, rules=MPERules()):
    """
    Score the references of the candidate ``p``.

    Returns
    -------
    scores : list[(Keypoint, int)]
        In the order of ``refs``.
    """
    scores = []
    for r in refs:
        s = 1
        if rules.connectivity and not same_stroke((p.x, p.y), (r.x, r.y),
                                                  graph):
            s += 1
        scores.append([r, s])
    if rules.y_priority:
        twos = [item for item in scores if item[1] == 2]
        if twos:
            min(twos, key=lambda item: _yx(item[0]))[1] += 1
    return [tuple(item) for item in scores]


def evaluate(kp, graph, tau, rules=MPERules(), rng=None):
    """
    Select the handle point and its reference point.

    Parameters
    ----------
    kp : `~strokemark.keypoints.KeypointSet`
    graph : `~strokemark.skeleton.StrokeGraph`
        The stroke graph of the same skeleton.
    tau : int
        Half size of the reference box.
    rules : `~strokemark.params.MPERules`, optional
        Scoring rule switches (all on by default).
    rng : `~numpy.random.Generator`, optional
        Random choices among tied candidates when ``rules.y_priority``
        is off.

    Returns
    -------
    selection : `HandleSelection`

    Raises
    ------
    NonEmbeddable :
        No endpoints, or no endpoint has any reference point.
    ContractError :
        ``kp`` and ``graph`` do not belong to the same skeleton.
    """
    if rules.endpoints_only:
        candidates = list(kp.endpoints)
    else:
        candidates = kp.all
    if not candidates:
        raise NonEmbeddable("no endpoints")
    if not rules.y_priority and rng is None:
        raise ValueError("random tie-breaks require a random generator")
    tie_rng = None if rules.y_priority else rng

    trace = []
    for p in sorted(candidates, key=_yx):
        refs = reference_set(p, kp, tau)
        if not refs:
            trace.append(ScoredTriple(p, None, 0))
            continue
        scores = score_references(p, refs, graph, rules)
        top = max(s for __, s in scores)
        best = _pick([r for r, s in scores if s == top], tie_rng)
        trace.append(ScoredTriple(p, best, top))

    top = max(t.score for t in trace)
    if top == 0:
        raise NonEmbeddable("no reference point within tau=%d" % tau)
    tied = [t for t in trace if t.score == top]
    if tie_rng is None:
        chosen = min(tied, key=lambda t: _yx(t.endpoint))
    else:
        chosen = tied[int(tie_rng.integers(len(tied)))]
    selection = HandleSelection(chosen.endpoint, chosen.reference,
                                chosen.score, trace)
    logger.debug("Selected handle (%d, %d), reference (%d, %d), score %d" %
                 (chosen.endpoint.x, chosen.endpoint.y,
                  chosen.reference.x, chosen.reference.y, chosen.score))
    return selection


def select_random(kp, tau, rng):
    """
    Random handle selection (ablation): a random endpoint, and a random
    reference within its ``tau`` box (or among all keypoints if the box
    is empty).

    Raises
    ------
    NonEmbeddable :
        No endpoints, or no other keypoint at all.
    """
    endpoints = list(kp.endpoints)
    if not endpoints:
        raise NonEmbeddable("no endpoints")
    p = endpoints[int(rng.integers(len(endpoints)))]
    refs = reference_set(p, kp, tau)
    if not refs:
        refs = reference_set(p, kp, float("inf"))
    if not refs:
        raise NonEmbeddable("no reference point")
    r = refs[int(rng.integers(len(refs)))]
    return HandleSelection(p, r, 0, [])


def trace_table(selection):
    """The scored candidates as plain dictionaries (for JSON dumps)."""
    table = []
    for t in selection.trace:
        table.append({
            "endpoint": [t.endpoint.x, t.endpoint.y],
            "kind": t.endpoint.kind,
            "reference": (None if t.reference is None
                          else [t.reference.x, t.reference.y]),
            "score": t.score,
        })
    return {
        "handle": [selection.handle.x, selection.handle.y],
        "reference": [selection.reference.x, selection.reference.y],
        "score": selection.score,
        "candidates": table,
    }
