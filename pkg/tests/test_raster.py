# Copyright (c) 2026 strokemark developers
# MIT License

import numpy as np
import pytest
from PIL import Image

from strokemark.errors import ContractError, ImageIOError
from strokemark.raster import (binarize, composite_region, fill_small_holes,
                               load_image, otsu_threshold, prepare,
                               remove_small_components, save_image)


def _otsu_sweep(img):
    """Exhaustive Otsu: the threshold maximizing the between-class
    variance, text being ``img < t``."""
    values = img.ravel().astype(np.float64)
    best_t, best_var = None, -1.0
    for t in range(1, 256):
        lo = values[values < t]
        hi = values[values >= t]
        if lo.size == 0 or hi.size == 0:
            continue
        w0, w1 = lo.size / values.size, hi.size / values.size
        var = w0 * w1 * (lo.mean() - hi.mean())**2
        if var > best_var:
            best_t, best_var = t, var
    return best_t


def test_load_image_white(tmp_path):
    path = str(tmp_path / "white.png")
    Image.fromarray(np.full((2, 2), 255, dtype=np.uint8)).save(path)
    img = load_image(path)
    assert img.dtype == np.uint8
    assert img.tolist() == [[255, 255], [255, 255]]


def test_load_image_rgb(tmp_path):
    path = str(tmp_path / "rgb.png")
    rgb = np.zeros((3, 4, 3), dtype=np.uint8)
    rgb[..., :] = 255
    rgb[1, 1] = (0, 0, 0)
    Image.fromarray(rgb).save(path)
    img = load_image(path)
    assert img.shape == (3, 4)
    assert img[1, 1] == 0 and img[0, 0] == 255


def test_load_image_missing(tmp_path):
    with pytest.raises(ImageIOError):
        load_image(str(tmp_path / "nonexistent.png"))


def test_load_image_garbage(tmp_path):
    path = tmp_path / "garbage.png"
    path.write_bytes(b"not an image")
    with pytest.raises(ImageIOError):
        load_image(str(path))


def test_save_load(tmp_path):
    img = np.array([[0, 255], [255, 0]], dtype=np.uint8)
    path = str(tmp_path / "out" / "glyph.png")
    save_image(path, img)
    assert np.array_equal(load_image(path), img)
    with pytest.raises(OSError):
        save_image(path, img, clobber=False)


def test_binarize_empty():
    img = np.full((8, 8), 255, dtype=np.uint8)
    assert np.all(binarize(img) == 255)


def test_binarize_already_binary():
    img = np.array([[0, 255], [255, 0]], dtype=np.uint8)
    assert np.array_equal(binarize(img, threshold=128), img)


def test_binarize_bimodal():
    img = np.full((10, 20), 220, dtype=np.uint8)
    img[:, :10] = 30
    out = binarize(img)
    assert np.all(out[:, :10] == 0)
    assert np.all(out[:, 10:] == 255)


@pytest.mark.parametrize("seed", range(5))
def test_otsu_matches_sweep(seed):
    rng = np.random.default_rng(seed)
    img = np.concatenate([rng.normal(60, 15, 300), rng.normal(190, 20, 500)])
    img = np.clip(img, 0, 255).astype(np.uint8).reshape(20, 40)
    t = otsu_threshold(img)
    expected = _otsu_sweep(img)
    # Both thresholds must give the same partition of the values
    values = np.unique(img)
    assert np.array_equal(values < t, values < expected)


def test_binarize_rejects_bad_shape():
    with pytest.raises(ContractError):
        binarize(np.zeros((3, 3, 3), dtype=np.uint8))
    with pytest.raises(ContractError):
        binarize(np.zeros((0, 5), dtype=np.uint8))


def test_composite_region():
    base = np.zeros((4, 4), dtype=np.uint8)
    patch = np.full((4, 4), 255, dtype=np.uint8)
    mask = np.zeros((4, 4), dtype=np.uint8)
    assert np.array_equal(composite_region(base, patch, mask), base)
    mask[:] = 255
    assert np.array_equal(composite_region(base, patch, mask), patch)
    mask[:] = 0
    mask[:, :2] = 255
    out = composite_region(base, patch, mask)
    assert np.all(out[:, :2] == 255)
    assert np.all(out[:, 2:] == 0)


def test_composite_region_mismatch():
    with pytest.raises(ContractError):
        composite_region(np.zeros((4, 4)), np.zeros((4, 5)),
                         np.zeros((4, 4)))


def test_remove_small_components():
    mask = np.zeros((10, 10), dtype=bool)
    mask[1, 1] = True
    mask[4:8, 4:8] = True
    out = remove_small_components(mask, 4)
    assert not out[1, 1]
    assert out[4:8, 4:8].all()


def test_fill_small_holes():
    mask = np.zeros((12, 12), dtype=bool)
    mask[2:10, 2:10] = True
    mask[5, 5] = False
    out = fill_small_holes(mask, 4)
    assert out[5, 5]
    # The outer background is never filled
    assert not out[0, 0]


def test_prepare_removes_speck():
    img = np.full((32, 32), 255, dtype=np.uint8)
    img[8:24, 10:14] = 0
    img[2, 28] = 0
    out = prepare(img, min_area=4)
    assert out[2, 28] == 255
    assert np.all(out[10:22, 11:13] == 0)
