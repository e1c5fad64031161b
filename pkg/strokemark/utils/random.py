# Copyright (c) 2026 strokemark developers
# MIT license

"""
Seeded random number generators.

Every random draw in the package goes through these helpers, so that the
same seed always reproduces bit-identical outputs.
"""

import zlib

import numpy as np


def make_rng(seed, *labels):
    """
    Create an independent random generator for the given seed and labels.

    Parameters
    ----------
    seed : int
        The (64-bit) base seed.
    *labels : str or int
        Extra labels (e.g., attack kind, item index) deriving independent
        streams from the same base seed.

    Returns
    -------
    rng : `~numpy.random.Generator`
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for label in labels:
        if isinstance(label, str):
            label = zlib.crc32(label.encode("utf-8"))
        entropy.append(int(label) & 0xFFFFFFFF)
    return np.random.default_rng(np.random.SeedSequence(entropy))
