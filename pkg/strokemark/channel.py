# Copyright (c) 2026 strokemark developers
# MIT License

"""
Simulated cross-media channels and adaptive attacks.

The physical channels (print-scan, print-camera, screenshot) are desk
simulations built from blur, noise, a jittered print threshold, gamma,
resampling and a perspective round trip; they are calibrated by the
presets in the ``[channel]`` configuration section and are not
reproductions of any real device.  Print-scan composes blur, noise,
the toner threshold and gamma, in this order.

Every attack is a pure function of the image and its `AttackSpec`; the
random streams are derived from ``(seed, kind)`` so that an identical
spec produces a bit-identical output.
"""

import io
import logging
import math
from collections import namedtuple

import numpy as np
from scipy import ndimage
from PIL import Image
from skimage import transform as sktf

from .errors import ConfigError
from .utils.random import make_rng


logger = logging.getLogger(__name__)


# Default parameters of every attack kind (see ``config.spec``)
DEFAULTS = {
    "identity": {},
    "gaussian_noise": {"var": 0.03},
    "gaussian_blur": {"kernel": 3},
    "rescale": {"factor": 0.75},
    "print_scan": {"blur_kernel": 3, "noise_var": 0.01, "jitter": 8,
                   "gamma": 0.9},
    "print_camera": {"angle": 20.0, "distance": 0.8, "blur_kernel": 3,
                     "noise_var": 0.01, "jitter": 8, "gamma": 0.9},
    "elastic_morph": {"preset": "light",
                      "light_alpha": 1.5, "light_sigma": 8.0,
                      "strong_alpha": 3.0, "strong_sigma": 6.0},
    "recompress": {"quality": 75},
}

# Attack names accepted in addition to the kinds
ALIASES = {
    "elastic_light": ("elastic_morph", {"preset": "light"}),
    "elastic_strong": ("elastic_morph", {"preset": "strong"}),
}

# Reference scale of the elastic deformation presets
ELASTIC_REFERENCE = 512

# Print threshold and the width of its soft transition [gray level]
TONER_THRESHOLD = 127.5
TONER_SOFTNESS = 16.0


AttackSpec = namedtuple("AttackSpec", ["kind", "params", "seed"])
AttackSpec.__doc__ = """
One channel distortion: the attack kind, its parameters (missing ones
take the defaults) and the seed of its random streams.
"""


def make_attack(name, presets=None, seed=0, **overrides):
    """
    Build the attack spec of the given name from the configured presets.

    Parameters
    ----------
    name : str
        An attack kind, or one of the aliases ``elastic_light`` and
        ``elastic_strong``.
    presets : dict, optional
        The ``[channel]`` sub-sections, e.g.,
        ``ConfigManager.attack_presets``.  The print-camera attack also
        inherits the print-scan preset.
    seed : int, optional
    **overrides :
        Parameters taking precedence over the presets.
    """
    presets = presets or {}
    kind, extra = ALIASES.get(name, (name, {}))
    if kind not in DEFAULTS:
        raise ConfigError("unknown attack: %s" % name)
    params = dict(DEFAULTS[kind])
    if kind == "print_camera":
        params.update(presets.get("print_scan", {}))
    params.update(presets.get(kind, {}))
    params.update(extra)
    params.update(overrides)
    return AttackSpec(kind, params, int(seed))


def attack_name(spec):
    """The display name of an attack spec (inverse of ``make_attack``)."""
    if spec.kind == "elastic_morph":
        return "elastic_%s" % spec.params.get("preset", "light")
    return spec.kind


def _param(spec, key):
    return spec.params.get(key, DEFAULTS[spec.kind].get(key))


def _require(cond, spec, msg):
    if not cond:
        raise ConfigError("attack %s: %s (params: %s)"
                          % (spec.kind, msg, spec.params))


def _to_uint8(arr):
    return np.clip(np.floor(arr + 0.5), 0, 255).astype(np.uint8)


def _check_blur_kernel(spec, k):
    _require(int(k) == k and k >= 3 and k % 2 == 1, spec,
             "blur kernel must be odd and >= 3")


def _check_noise_var(spec, var):
    _require(0.0 <= var <= 0.25, spec, "noise variance not in [0, 0.25]")


def blur_sigma(kernel):
    """The Gaussian sigma matching a ``kernel x kernel`` blur kernel."""
    return 0.3 * ((kernel - 1) / 2.0 - 1) + 0.8


def _blur(img, kernel):
    sigma = blur_sigma(kernel)
    radius = (kernel - 1) // 2
    return ndimage.gaussian_filter(img, sigma=sigma, mode="reflect",
                                   truncate=radius / sigma)


def _noise(img, var, rng):
    if var == 0:
        return img
    return img + rng.normal(0.0, math.sqrt(var) * 255.0, size=img.shape)


def _resample(img, shape):
    return sktf.resize(img, shape, order=1, mode="edge",
                       anti_aliasing=False, preserve_range=True)


def _print_scan(img, spec, rng):
    kernel = _param(spec, "blur_kernel")
    var = _param(spec, "noise_var")
    jitter = int(_param(spec, "jitter"))
    gamma = float(_param(spec, "gamma"))
    _check_blur_kernel(spec, kernel)
    _check_noise_var(spec, var)
    _require(jitter >= 0, spec, "jitter must be non-negative")
    _require(gamma > 0, spec, "gamma must be positive")
    out = _noise(_blur(img, int(kernel)), var, rng)
    # Toner response around a per-pixel jittered threshold
    threshold = TONER_THRESHOLD + rng.uniform(-jitter, jitter, size=img.shape)
    out = 255.0 / (1.0 + np.exp(-(out - threshold) / TONER_SOFTNESS))
    return 255.0 * (out / 255.0) ** gamma


def perspective_transform(shape, angle):
    """
    The homography of viewing a page of the given shape at ``angle``
    degrees around its vertical axis: the right edge recedes, i.e., it
    shortens by ``cos(angle)`` and the page narrows accordingly.
    """
    h, w = shape
    c = math.cos(math.radians(angle))
    d = (h - 1) * (1 - c) / 2.0
    w1 = (w - 1) * (1 + c) / 2.0
    src = np.array([[0, 0], [w - 1, 0], [w - 1, h - 1], [0, h - 1]],
                   dtype=np.float64)
    dst = np.array([[0, 0], [w1, d], [w1, h - 1 - d], [0, h - 1]],
                   dtype=np.float64)
    return sktf.estimate_transform("projective", src, dst)


def _print_camera(img, spec, rng):
    angle = float(_param(spec, "angle"))
    distance = float(_param(spec, "distance"))
    _require(0.0 <= angle <= 60.0, spec, "angle not in [0, 60] degrees")
    _require(0.25 <= distance <= 1.0, spec, "distance not in [0.25, 1]")
    out = _print_scan(img, spec, rng)
    h, w = out.shape
    if angle > 0:
        tform = perspective_transform(out.shape, angle)
        out = sktf.warp(out, tform.inverse, order=1, mode="constant",
                        cval=255.0, preserve_range=True)
    if distance < 1.0:
        small = (max(1, int(round(h * distance))),
                 max(1, int(round(w * distance))))
        out = _resample(_resample(out, small), (h, w))
    if angle > 0:
        # Rectify by the known homography (the evaluator's deskew)
        out = sktf.warp(out, tform, order=1, mode="constant", cval=255.0,
                        preserve_range=True)
    return out


def elastic_field(shape, alpha, sigma, rng):
    """
    Random displacement fields ``(dy, dx)``: white Gaussian noise
    smoothed by a Gaussian of ``sigma`` and normalized to the RMS
    displacement ``alpha``.
    """
    fields = []
    for __ in range(2):
        f = ndimage.gaussian_filter(rng.standard_normal(shape), sigma,
                                    mode="reflect")
        rms = math.sqrt(float(np.mean(f ** 2)))
        fields.append(f * (alpha / rms) if rms > 0 else f)
    return tuple(fields)


def _elastic(img, spec, rng):
    preset = _param(spec, "preset")
    _require(preset in ("light", "strong"), spec,
             "elastic preset must be 'light' or 'strong'")
    alpha = spec.params.get("alpha", _param(spec, preset + "_alpha"))
    sigma = spec.params.get("sigma", _param(spec, preset + "_sigma"))
    _require(alpha >= 0 and sigma > 0, spec, "invalid alpha/sigma")
    scale = spec.params.get("scale", min(img.shape) / ELASTIC_REFERENCE)
    dy, dx = elastic_field(img.shape, alpha * scale,
                           max(sigma * scale, 0.5), rng)
    y, x = np.meshgrid(np.arange(img.shape[0]), np.arange(img.shape[1]),
                       indexing="ij")
    return ndimage.map_coordinates(img, [y + dy, x + dx], order=1,
                                   mode="reflect")


def _recompress(img, spec):
    quality = int(_param(spec, "quality"))
    _require(1 <= quality <= 100, spec, "JPEG quality not in [1, 100]")
    buf = io.BytesIO()
    Image.fromarray(_to_uint8(img)).save(buf, format="JPEG",
                                         quality=quality)
    buf.seek(0)
    with Image.open(buf) as im:
        return np.asarray(im.convert("L"), dtype=np.float64)


def apply(img, spec):
    """
    Apply the channel distortion to a gray image.

    Parameters
    ----------
    img : 2D ``uint8`` `~numpy.ndarray`
    spec : `AttackSpec`

    Returns
    -------
    out : 2D ``uint8`` `~numpy.ndarray`

    Raises
    ------
    ConfigError :
        Unknown attack kind, or a parameter outside its range.
    """
    img = np.asarray(img)
    if img.ndim != 2:
        raise ConfigError("attack input must be a 2D gray image")
    kind = spec.kind
    if kind not in DEFAULTS:
        raise ConfigError("unknown attack: %s" % kind)
    rng = make_rng(spec.seed, kind)
    src = img.astype(np.float64)

    if kind == "identity":
        return img.astype(np.uint8, copy=True)
    elif kind == "gaussian_noise":
        var = float(_param(spec, "var"))
        _check_noise_var(spec, var)
        out = _noise(src, var, rng)
    elif kind == "gaussian_blur":
        kernel = _param(spec, "kernel")
        _check_blur_kernel(spec, kernel)
        out = _blur(src, int(kernel))
    elif kind == "rescale":
        factor = float(_param(spec, "factor"))
        _require(0.0 < factor <= 1.0, spec, "factor not in (0, 1]")
        if factor == 1.0:
            out = src
        else:
            small = (max(1, int(round(img.shape[0] * factor))),
                     max(1, int(round(img.shape[1] * factor))))
            out = _resample(_resample(src, small), img.shape)
    elif kind == "print_scan":
        out = _print_scan(src, spec, rng)
    elif kind == "print_camera":
        out = _print_camera(src, spec, rng)
    elif kind == "elastic_morph":
        out = _elastic(src, spec, rng)
    else:
        out = _recompress(src, spec)
    logger.debug("Applied attack %s (seed %d)" % (attack_name(spec),
                                                   spec.seed))
    return _to_uint8(out)
