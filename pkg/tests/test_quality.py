# Copyright (c) 2026 strokemark developers
# MIT License

import numpy as np
import pytest

from strokemark.errors import ContractError
from strokemark.quality import (PSNR_CAP, bit_accuracy, psnr, quality_score,
                                ssim)


def test_psnr_identical():
    img = np.full((16, 16), 77, dtype=np.uint8)
    assert psnr(img, img) == PSNR_CAP == 99


def test_psnr_max_error():
    a = np.zeros((8, 8), dtype=np.uint8)
    b = np.full((8, 8), 255, dtype=np.uint8)
    assert psnr(a, b) == pytest.approx(0.0)


def test_psnr_one_pixel():
    a = np.full((512, 512), 255, dtype=np.uint8)
    b = a.copy()
    b[100, 100] = 255 - 16
    assert psnr(a, b) == pytest.approx(78.23, abs=0.01)
    assert psnr(a, b) == psnr(b, a)


def test_psnr_mismatch():
    with pytest.raises(ContractError):
        psnr(np.zeros((4, 4)), np.zeros((4, 5)))


def test_ssim_identical():
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=(32, 32)).astype(np.uint8)
    assert ssim(img, img) == pytest.approx(1.0)


def test_ssim_constant_offset():
    a = np.full((32, 32), 128, dtype=np.uint8)
    assert ssim(a, a + 1) > 0.99


def test_ssim_independent_noise():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 256, size=(64, 64)).astype(np.uint8)
    b = rng.integers(0, 256, size=(64, 64)).astype(np.uint8)
    assert abs(ssim(a, b)) < 0.1
    assert ssim(a, b) == pytest.approx(ssim(b, a))


def test_ssim_too_small():
    with pytest.raises(ContractError):
        ssim(np.zeros((8, 8)), np.zeros((8, 8)))


def test_bit_accuracy():
    assert bit_accuracy([1, 0, 1, 1], [1, 0, 1, 1]) == 100
    assert bit_accuracy([1, 0, 1, 1], [0, 1, 0, 0]) == 0
    assert bit_accuracy([1, 0, 1, 1], [1, 0, 1, 0]) == 75


def test_bit_accuracy_length():
    with pytest.raises(ContractError):
        bit_accuracy([1, 0], [1, 0, 1])
    with pytest.raises(ContractError):
        bit_accuracy([], [])


def test_quality_score():
    a = np.full((16, 16), 255, dtype=np.uint8)
    score = quality_score(a, a, truth=[1, 0], decoded=[1, 1])
    assert score.psnr == PSNR_CAP
    assert score.ssim == pytest.approx(1.0)
    assert score.acc == 50
    assert quality_score(a, a).acc is None
