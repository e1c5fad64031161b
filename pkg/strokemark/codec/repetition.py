# Copyright (c) 2026 strokemark developers
# MIT License

"""
Repetition coding: the message bits are assigned cyclically to the
carrier positions in reading order, and recovered by a per-bit majority
vote.
"""

import logging
from collections import namedtuple

import numpy as np


logger = logging.getLogger(__name__)


VoteResult = namedtuple("VoteResult", ["message", "margins", "votes"])
VoteResult.__doc__ = """
message : ``uint8`` `~numpy.ndarray`
    The voted message bits.
margins : ``int`` `~numpy.ndarray`
    ``|#ones - #zeros|`` of every message bit.
votes : ``int`` `~numpy.ndarray`
    The number of votes cast for every message bit.
"""


def repetitions(capacity, length):
    """The number of full repetitions of the message."""
    if length < 1:
        raise ValueError("message length must be >= 1")
    return capacity // length


def assign_positions(capacity, length):
    """
    The message bit index carried by every carrier position.

    Returns
    -------
    index : ``int`` `~numpy.ndarray`
        ``index[k] = k mod length``
    """
    if capacity < length:
        logger.warning("Capacity %d is below the message length %d; "
                       "%d bits are not embedded" %
                       (capacity, length, length - capacity))
    return np.arange(capacity, dtype=np.int64) % length


def majority_vote(stream, length, confidences=None):
    """
    Recover the message by the per-bit majority vote over the
    repetitions.

    Parameters
    ----------
    stream : list
        The bit read at every carrier position (``None`` if not read).
    length : int
        The message length.
    confidences : list of float, optional
        The confidence of every read; a tied vote takes the bit read with
        the highest confidence (default: bit 0).

    Returns
    -------
    result : `VoteResult`
        Bits without any vote are 0, with zero margin and votes.
    """
    ones = np.zeros(length, dtype=np.int64)
    zeros = np.zeros(length, dtype=np.int64)
    best = [None] * length
    for k, bit in enumerate(stream):
        if bit is None:
            continue
        i = k % length
        if bit:
            ones[i] += 1
        else:
            zeros[i] += 1
        conf = confidences[k] if confidences is not None else 0
        if best[i] is None or conf > best[i][0]:
            best[i] = (conf, int(bit))
    message = (ones > zeros).astype(np.uint8)
    for i in np.nonzero((ones == zeros) & (ones > 0))[0]:
        message[i] = best[i][1] if confidences is not None else 0
    votes = ones + zeros
    missing = int(np.count_nonzero(votes == 0))
    if missing:
        logger.warning("%d of %d message bits received no vote"
                       % (missing, length))
    return VoteResult(message, np.abs(ones - zeros), votes)


def inject_flips(stream, rate, rng):
    """
    Flip every read bit independently with probability ``rate``.

    Parameters
    ----------
    stream : list of int
    rate : float
        Flip probability in [0, 1].
    rng : `~numpy.random.Generator`

    Returns
    -------
    flipped : list of int
    """
    if not 0 <= rate <= 1:
        raise ValueError("flip rate must be in [0, 1], got %r" % (rate,))
    flips = rng.random(len(stream)) < rate
    return [int(b) ^ int(f) for b, f in zip(stream, flips)]
