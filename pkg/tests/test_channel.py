# Copyright (c) 2026 strokemark developers
# MIT License

import numpy as np
import pytest

from strokemark.channel import (DEFAULTS, apply, attack_name, blur_sigma,
                                make_attack)
from strokemark.errors import ConfigError
from strokemark.glyphs import render_glyph


@pytest.fixture
def glyph():
    return render_glyph("n", size=64)


def test_identity(glyph):
    out = apply(glyph, make_attack("identity"))
    assert np.array_equal(out, glyph)
    assert out is not glyph


def test_noise_zero_variance(glyph):
    out = apply(glyph, make_attack("gaussian_noise", var=0))
    assert np.array_equal(out, glyph)


def test_blur_constant():
    img = np.full((32, 32), 200, dtype=np.uint8)
    out = apply(img, make_attack("gaussian_blur", kernel=3))
    assert np.array_equal(out, img)


def test_blur_sigma():
    assert blur_sigma(3) == pytest.approx(0.8)
    assert blur_sigma(5) == pytest.approx(1.1)


@pytest.mark.parametrize("name", ["gaussian_noise", "print_scan",
                                  "print_camera", "elastic_light",
                                  "elastic_strong"])
def test_deterministic(glyph, name):
    spec = make_attack(name, seed=11)
    a = apply(glyph, spec)
    b = apply(glyph, spec)
    assert a.dtype == np.uint8 and a.shape == glyph.shape
    assert np.array_equal(a, b)


def test_seed_changes_noise(glyph):
    a = apply(glyph, make_attack("gaussian_noise", seed=1))
    b = apply(glyph, make_attack("gaussian_noise", seed=2))
    assert not np.array_equal(a, b)


def test_rescale_keeps_shape(glyph):
    out = apply(glyph, make_attack("rescale", factor=0.5))
    assert out.shape == glyph.shape
    assert np.array_equal(apply(glyph, make_attack("rescale", factor=1.0)),
                          glyph)


def test_recompress(glyph):
    out = apply(glyph, make_attack("recompress", quality=90))
    assert out.shape == glyph.shape
    assert np.abs(out.astype(int) - glyph.astype(int)).mean() < 10


@pytest.mark.parametrize("name, params", [
    ("gaussian_blur", {"kernel": 4}),
    ("gaussian_blur", {"kernel": 1}),
    ("gaussian_noise", {"var": -0.1}),
    ("rescale", {"factor": 0}),
    ("recompress", {"quality": 0}),
    ("print_camera", {"angle": 75}),
    ("elastic_morph", {"preset": "medium"}),
])
def test_bad_params(glyph, name, params):
    with pytest.raises(ConfigError):
        apply(glyph, make_attack(name, **params))


def test_unknown_attack():
    with pytest.raises(ConfigError):
        make_attack("sharpen")


def test_rejects_color(glyph):
    with pytest.raises(ConfigError):
        apply(np.dstack([glyph] * 3), make_attack("identity"))


def test_make_attack_presets():
    presets = {"print_scan": {"jitter": 4},
               "print_camera": {"angle": 30.0}}
    spec = make_attack("print_camera", presets, seed=5)
    assert spec.kind == "print_camera"
    assert spec.params["jitter"] == 4
    assert spec.params["angle"] == 30.0
    assert spec.seed == 5
    spec = make_attack("print_camera", presets, angle=10.0)
    assert spec.params["angle"] == 10.0


def test_aliases():
    spec = make_attack("elastic_strong")
    assert spec.kind == "elastic_morph"
    assert spec.params["preset"] == "strong"
    assert attack_name(spec) == "elastic_strong"
    for kind in DEFAULTS:
        assert attack_name(make_attack(kind)) in (kind, "elastic_light")


def test_print_scan_toner_threshold():
    ramp = np.tile(np.arange(256, dtype=np.uint8), (8, 1))
    out = apply(ramp, make_attack("print_scan", noise_var=0.0, jitter=8,
                                  gamma=1.0))
    assert out[:, 60].max() < 10
    assert out[:, 200].min() > 245


def test_print_scan_gamma_after_threshold():
    img = np.full((16, 16), 128, dtype=np.uint8)
    out = apply(img, make_attack("print_scan", noise_var=0.0, jitter=0,
                                 gamma=0.5))
    # Half toner response, then the gamma: 255 * sqrt(0.5)
    assert np.all((out >= 176) & (out <= 188))


def test_print_scan_jittered_threshold():
    img = np.full((32, 32), 128, dtype=np.uint8)
    out = apply(img, make_attack("print_scan", noise_var=0.0, jitter=8,
                                 gamma=1.0, seed=3))
    assert out.std() > 5
    assert out.min() >= 90 and out.max() <= 165
