# Copyright (c) 2026 strokemark developers
# MIT License

"""
Imperceptibility and robustness metrics.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from skimage.metrics import mean_squared_error, structural_similarity

from .errors import ContractError


logger = logging.getLogger(__name__)

# PSNR reported for identical images
PSNR_CAP = 99.0
# Side of the Gaussian SSIM window (sigma 1.5, truncated at 3.5 sigma)
SSIM_WINDOW = 11


QualityScore = namedtuple("QualityScore", ["psnr", "ssim", "acc"])
QualityScore.__doc__ = """
PSNR [dB] (capped at 99), SSIM, and the bit accuracy [%].
"""


def _check_pair(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ContractError("image dimensions differ: %s vs. %s"
                            % (a.shape, b.shape))
    return (a.astype(np.float64), b.astype(np.float64))


def psnr(a, b):
    """
    Peak signal-to-noise ratio of two 8-bit gray images.

    Returns
    -------
    psnr : float
        ``10 log10(255^2 / MSE)`` [dB]; 99 for identical images.
    """
    a, b = _check_pair(a, b)
    mse = mean_squared_error(a, b)
    if mse == 0:
        return PSNR_CAP
    return min(PSNR_CAP, 10.0 * math.log10(255.0**2 / mse))


def ssim(a, b):
    """
    Mean structural similarity with the 11x11 Gaussian window
    (sigma = 1.5), ``K1 = 0.01``, ``K2 = 0.03`` and the dynamic range 255.

    Raises
    ------
    ContractError :
        Mismatched dimensions, or an image side shorter than the window.
    """
    a, b = _check_pair(a, b)
    if min(a.shape) < SSIM_WINDOW:
        raise ContractError("image too small for SSIM: %s" % (a.shape,))
    return float(structural_similarity(
        a, b, data_range=255, gaussian_weights=True, sigma=1.5,
        use_sample_covariance=False, K1=0.01, K2=0.03))


def bit_accuracy(truth, decoded):
    """
    Percentage of matching bits.

    Raises
    ------
    ContractError :
        The sequences differ in length.
    """
    truth = np.asarray(truth, dtype=np.int64).ravel()
    decoded = np.asarray(decoded, dtype=np.int64).ravel()
    if truth.size != decoded.size:
        raise ContractError("bit sequences differ in length: %d vs. %d"
                            % (truth.size, decoded.size))
    if truth.size == 0:
        raise ContractError("empty bit sequences")
    return 100.0 * float(np.count_nonzero(truth == decoded)) / truth.size


def quality_score(cover, encoded, truth=None, decoded=None):
    acc = None
    if truth is not None:
        acc = bit_accuracy(truth, decoded)
    return QualityScore(psnr(cover, encoded), ssim(cover, encoded), acc)
