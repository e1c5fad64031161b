# Copyright (c) 2026 strokemark developers
# MIT license

"""
Custom checkers to further validate the configurations.

NOTE
----
These functions check one config option against its context, which is
beyond what the per-option checks of ``validate.Validator`` can do.
"""

import os
import re

from ..errors import ConfigError


ATTACK_NAMES = ("identity", "gaussian_noise", "gaussian_blur", "rescale",
                "print_scan", "print_camera", "elastic_light",
                "elastic_strong", "recompress")


def _check_existence(configs, keys):
    """
    Check whether the file/directory corresponding to the (non-empty)
    config exists.
    """
    if isinstance(keys, str):
        keys = [keys, ]
    results = {}
    for key in keys:
        path = configs.get_path(key)
        if path is not None and not os.path.exists(path):
            results[key] = 'File/directory not exist: "%s"' % path
    return results


def _is_odd(n):
    return n % 2 == 1


def check_embed(configs):
    """
    Check the "[embed]" section of the configurations.
    """
    results = {}
    t_embed = configs.getn("embed/t_embed")
    margin = configs.getn("embed/margin")
    if t_embed <= margin:
        results["embed/t_embed"] = "must be greater than 'margin'"
    return results


def check_document(configs):
    """
    Check the "[document]" section of the configurations.
    """
    results = {}
    key = configs.getn("document/key")
    if key and not re.fullmatch(r"[0-9a-fA-F]{32}", key):
        results["document/key"] = "not 32 hexadecimal digits (128 bits)"
    return results


def check_channel(configs):
    """
    Check the "[channel]" section of the configurations.
    """
    results = {}
    for key in ["channel/gaussian_blur/kernel",
                "channel/print_scan/blur_kernel"]:
        if not _is_odd(configs.getn(key)):
            results[key] = "kernel size not odd"
    return results


def check_evaluation(configs):
    """
    Check the "[evaluation]" section of the configurations.
    """
    results = {}
    unknown = [a for a in configs.getn("evaluation/attacks")
               if a not in ATTACK_NAMES]
    if unknown:
        results["evaluation/attacks"] = "unknown attacks: %s" % (
            ", ".join(unknown))
    results.update(_check_existence(configs, "evaluation/corpus_dir"))
    return results


# Available checkers to validate the configurations
_CHECKERS = [
    check_embed,
    check_document,
    check_channel,
    check_evaluation,
]


def check_configs(configs, raise_exception=True, checkers=_CHECKERS):
    """
    Check/validate the whole configurations through all the supplied
    checker functions.

    Parameters
    ----------
    configs : `~ConfigManager`
        An ``ConfigManager`` instance contains both default and user
        configurations.
    raise_exception : bool, optional
        Whether raise a ``ConfigError`` exception if there is any invalid
        config options?
    checkers : list[function], optional
        List of checker functions through which the configurations
        will be checked.

    Returns
    -------
    validity : bool
        ``True`` if the configurations pass all checker functions.
    errors : dict
        Invalid config options mapped to the error messages;
        ``{}`` if ``validity=True``.

    Raises
    ------
    ConfigError :
        With ``raise_exception=True``, if any configuration option failed
        to pass all checkers.
    """
    errors = {}
    for checker in checkers:
        errors.update(checker(configs))

    if errors == {}:
        validity = True
    else:
        validity = False
        if raise_exception:
            msg = "\n".join(['Config "{key}": {val}'.format(key=key, val=val)
                             for key, val in errors.items()])
            raise ConfigError(msg)
    return (validity, errors)
