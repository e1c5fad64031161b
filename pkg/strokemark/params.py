# Copyright (c) 2026 strokemark developers
# MIT License

"""
Embedding parameters.

The geometric parameters are specified at a reference scale (shortest
glyph edge of 512 pixels) and scaled to the actual glyph size:
``max(minimum, round(value * size / reference_size))``.
"""

import logging
from collections import namedtuple

import numpy as np


logger = logging.getLogger(__name__)

# Minimum values after scaling
MINIMUMS = {
    "tau": 4,
    "sigma": 2,
    "t_embed": 2,
    "margin": 1,
    "r_h": 3,
}

# Ablation modes of the handle selection (MPE) and target estimation
# (TPE), see ``EmbedParams.ablated()``
ABLATIONS = ("full", "mpe_only", "tpe_only", "random",
             "no_rule1", "no_rule2", "no_rule3")


MPERules = namedtuple("MPERules",
                      ["endpoints_only", "connectivity", "y_priority"])
MPERules.__new__.__defaults__ = (True, True, True)
MPERules.__doc__ = """
Switches of the three scoring rules of the handle selection:

endpoints_only : only endpoints are handle candidates
connectivity : +1 for references on a different stroke
y_priority : +1 (and tie-breaks) for the topmost candidate; random
    choice among the top candidates otherwise
"""


def scale_value(value, size, reference_size, minimum):
    """Scale a reference-scale value to the given size (round half up)."""
    return max(minimum, int(np.floor(value * size / reference_size + 0.5)))


class EmbedParams:
    """
    The (scaled) parameters of the glyph embedding and extraction.

    Attributes
    ----------
    tau : int
        Half size of the reference box around the handle candidates.
    sigma : int
        Expansion of the editing rectangle.
    t_embed : int
        Decision threshold of the gap.
    margin : int
        Safety margin of the achieved gap from the threshold.
    r_h : int
        Arc distance for the stroke direction estimation.
    spur_length : int
        Spur pruning threshold.
    min_area : int
        Specks/holes smaller than this are removed before thinning.
    fixed_distance : float
        Fixed movement magnitude; 0 for the threshold-relative mode.
    min_stroke_vector : float
        Minimum |V| component along the gap axis.
    max_attempts : int
        Closed-loop correction rounds of the warp backend.
    verify : bool
        Verify the embedding by decoding it again.
    backend : str
        Name of the encoder backend.
    rules : `MPERules`
    random_handle : bool
        Pick the handle/reference at random (handle selection ablated).
    random_target : bool
        Pick the target at random (target estimation ablated).
    seed : int
        Seed of the ablation random choices.
    size : int
        The glyph size these parameters are scaled to.
    """
    def __init__(self, tau=80, sigma=10, t_embed=10, margin=5, r_h=5,
                 spur_length=None, min_area=None, fixed_distance=0.0,
                 min_stroke_vector=0.05, max_attempts=3, verify=True,
                 backend="warp", rules=None, random_handle=False,
                 random_target=False, seed=0, size=512):
        self.tau = int(tau)
        self.sigma = int(sigma)
        self.t_embed = int(t_embed)
        self.margin = int(margin)
        self.r_h = int(r_h)
        self.size = int(size)
        if spur_length is None:
            spur_length = max(3, int(round(0.02 * self.size)))
        self.spur_length = int(spur_length)
        if min_area is None:
            min_area = max(4, (self.size // 32) ** 2)
        self.min_area = int(min_area)
        self.fixed_distance = float(fixed_distance)
        self.min_stroke_vector = float(min_stroke_vector)
        self.max_attempts = int(max_attempts)
        self.verify = bool(verify)
        self.backend = backend
        self.rules = rules if rules is not None else MPERules()
        self.random_handle = bool(random_handle)
        self.random_target = bool(random_target)
        self.seed = int(seed)

    @classmethod
    def scaled(cls, size, tau=80, sigma=10, t_embed=10, margin=5, r_h=5,
               fixed_distance=0.0, reference_size=512, auto_scale=True,
               **kwargs):
        """
        Create the parameters for a glyph of the given size (shortest
        edge), scaling the reference-scale values.

        The margin is kept below the threshold after scaling.
        """
        size = int(size)
        values = {"tau": tau, "sigma": sigma, "t_embed": t_embed,
                  "margin": margin, "r_h": r_h}
        if auto_scale:
            values = {k: scale_value(v, size, reference_size, MINIMUMS[k])
                      for k, v in values.items()}
            fixed_distance = fixed_distance * size / reference_size
        if values["margin"] >= values["t_embed"]:
            values["margin"] = max(1, values["t_embed"] - 1)
        return cls(fixed_distance=fixed_distance, size=size, **values,
                   **kwargs)

    @classmethod
    def from_configs(cls, configs, size):
        """
        Create the parameters from the ``[embed]`` section of the
        configurations for a glyph of the given size.
        """
        conf = configs.get("embed")
        return cls.scaled(
            size,
            tau=conf["tau"], sigma=conf["sigma"], t_embed=conf["t_embed"],
            margin=conf["margin"], r_h=conf["r_h"],
            fixed_distance=conf["fixed_distance"],
            reference_size=conf["reference_size"],
            auto_scale=conf["auto_scale"],
            min_stroke_vector=conf["min_stroke_vector"],
            max_attempts=conf["max_attempts"],
            verify=conf["verify"],
            backend=conf["backend"],
            seed=configs.getn("channel/seed"))

    def replace(self, **kwargs):
        """Copy of these parameters with some attributes replaced."""
        params = EmbedParams.__new__(EmbedParams)
        params.__dict__.update(self.__dict__)
        for key, value in kwargs.items():
            if key not in params.__dict__:
                raise AttributeError("unknown parameter: %s" % key)
            setattr(params, key, value)
        return params

    def ablated(self, mode):
        """
        Copy of these parameters configured for an ablation mode.

        * ``full``: unchanged;
        * ``mpe_only``: handle selection kept, random target;
        * ``tpe_only``: random handle, target estimation kept;
        * ``random``: random handle and random target;
        * ``no_rule1`` / ``no_rule2`` / ``no_rule3``: one scoring rule of
          the handle selection switched off.

        The decode verification is disabled for all but ``full``, so that
        the degraded embeddings are measured rather than rejected.
        """
        if mode not in ABLATIONS:
            raise ValueError("unknown ablation mode: %s" % mode)
        if mode == "full":
            return self.replace()
        kwargs = {"verify": False}
        if mode in ("tpe_only", "random"):
            kwargs["random_handle"] = True
        if mode in ("mpe_only", "random"):
            kwargs["random_target"] = True
        if mode == "no_rule1":
            kwargs["rules"] = MPERules(endpoints_only=False)
        elif mode == "no_rule2":
            kwargs["rules"] = MPERules(connectivity=False)
        elif mode == "no_rule3":
            kwargs["rules"] = MPERules(y_priority=False)
        return self.replace(**kwargs)

    def as_dict(self):
        d = dict(self.__dict__)
        d["rules"] = dict(self.rules._asdict())
        return d

    def __repr__(self):
        return ("<EmbedParams size=%d tau=%d sigma=%d t_embed=%d margin=%d "
                "r_h=%d>" % (self.size, self.tau, self.sigma, self.t_embed,
                             self.margin, self.r_h))
