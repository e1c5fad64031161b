# Copyright (c) 2026 strokemark developers
# MIT License

"""
Codebook: a cache of the encoded (bit 0, bit 1) variants of glyph crops,
keyed by the glyph content and the embedding parameters.

On disk, a codebook is a directory of PNG files plus the ``index.json``
index::

    {
      "schema_version": 1,
      "entries": {
        "<key>": {
          "0": {"status": "ok", "file": "<key>_0.png", "reason": "",
                "plan": {...}},
          "1": {"status": "infeasible", "file": null,
                "reason": "...", "plan": null}
        }
      }
    }

The failed embeddings are cached as well, so they are never retried.
"""

import os
import json
import hashlib
import logging
import threading
from collections import namedtuple

import numpy as np

from ..encoder import embed_bit
from ..errors import EmbedInfeasible, ManifestError, NonEmbeddable
from ..raster import binarize, load_image, save_image
from ..utils.hashutil import array_md5
from ..utils.io import read_json, write_json


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
INDEX_FILE = "index.json"

# Entry status
OK = "ok"
UNCHANGED = "unchanged"
INFEASIBLE = "infeasible"
NONEMBEDDABLE = "nonembeddable"


Entry = namedtuple("Entry", ["status", "image", "reason", "plan"])
Entry.__doc__ = """
The cached outcome of embedding one bit into one glyph crop; ``image``
is ``None`` unless the status is ``ok`` or ``unchanged``.
"""


def params_fingerprint(params):
    """Digest of the embedding parameters affecting the encoded glyphs."""
    data = json.dumps(params.as_dict(), sort_keys=True, default=str)
    return hashlib.md5(data.encode("utf-8")).hexdigest()


def plan_metadata(encoded):
    plan = encoded.plan
    sel = encoded.selection
    return {
        "handle": [sel.handle.x, sel.handle.y],
        "reference": [sel.reference.x, sel.reference.y],
        "target": list(plan.target),
        "distance": float(plan.distance),
        "direction": int(plan.direction),
        "axis": plan.geometry.axis,
        "gap": int(plan.geometry.delta),
        "moved": bool(plan.moved),
        "backend": encoded.backend_id,
    }


class Codebook:
    """
    Cache of the encoded glyph variants.

    Lookups may run concurrently; an entry is inserted under a lock and
    becomes visible only once complete.

    Parameters
    ----------
    path : str, optional
        The codebook directory; the codebook lives only in memory if not
        given.  An existing index is loaded.
    """
    def __init__(self, path=None):
        self.path = path
        self._entries = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        if path and os.path.exists(os.path.join(path, INDEX_FILE)):
            self.load()

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    @staticmethod
    def key_of(crop, params):
        """The cache key of a glyph crop under the given parameters."""
        digest = hashlib.md5()
        digest.update(array_md5(binarize(crop)).encode("ascii"))
        digest.update(params_fingerprint(params).encode("ascii"))
        return digest.hexdigest()

    def lookup(self, key, bit):
        entries = self._entries.get(key)
        if entries is None:
            return None
        return entries.get(int(bit))

    def insert(self, key, bit, entry):
        with self._lock:
            entries = dict(self._entries.get(key, {}))
            entries[int(bit)] = entry
            self._entries[key] = entries

    def encode(self, crop, bit, params, backend=None):
        """
        Get the encoded variant of the crop from the cache, or embed the
        bit and cache the outcome.

        Returns
        -------
        entry : `Entry`
        """
        key = self.key_of(crop, params)
        entry = self.lookup(key, bit)
        if entry is not None:
            self.hits += 1
            return entry
        self.misses += 1
        try:
            encoded = embed_bit(crop, bit, params, backend=backend)
        except NonEmbeddable as e:
            entry = Entry(NONEMBEDDABLE, None, e.reason, None)
        except EmbedInfeasible as e:
            entry = Entry(INFEASIBLE, None, e.reason, None)
        else:
            status = OK if encoded.plan.moved else UNCHANGED
            entry = Entry(status, encoded.image, "", plan_metadata(encoded))
        self.insert(key, bit, entry)
        return entry

    def build(self, crops, params, backend=None):
        """Encode both bits of every crop into the codebook."""
        for crop in crops:
            for bit in (0, 1):
                self.encode(crop, bit, params, backend=backend)
        logger.info("Codebook holds %d glyphs" % len(self))

    def inspect(self):
        """Summary counts of the cached entries by bit and status."""
        summary = {"glyphs": len(self._entries), "path": self.path,
                   "hits": self.hits, "misses": self.misses}
        for bit in (0, 1):
            counts = {}
            for entries in self._entries.values():
                if bit in entries:
                    status = entries[bit].status
                    counts[status] = counts.get(status, 0) + 1
            summary["bit%d" % bit] = counts
        return summary

    def save(self, path=None, clobber=True):
        """Write the PNGs and the index into the codebook directory."""
        path = path or self.path
        if not path:
            raise ManifestError("codebook directory not specified")
        index = {}
        with self._lock:
            items = list(self._entries.items())
        for key, entries in items:
            index[key] = {}
            for bit, entry in entries.items():
                filename = None
                if entry.image is not None:
                    filename = "%s_%d.png" % (key, bit)
                    save_image(os.path.join(path, filename), entry.image,
                               clobber=True)
                index[key][str(bit)] = {"status": entry.status,
                                        "file": filename,
                                        "reason": entry.reason,
                                        "plan": entry.plan}
        write_json(os.path.join(path, INDEX_FILE),
                   {"schema_version": SCHEMA_VERSION, "entries": index},
                   clobber=clobber)
        self.path = path
        logger.info("Saved codebook of %d glyphs to: %s" % (len(index), path))

    def load(self, path=None):
        """Load the codebook index and its PNGs."""
        path = path or self.path
        data = read_json(os.path.join(path, INDEX_FILE))
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ManifestError("unsupported codebook schema: %s"
                                % data.get("schema_version"))
        entries = {}
        for key, bits in data["entries"].items():
            entries[key] = {}
            for bit, item in bits.items():
                image = None
                if item["file"]:
                    image = np.asarray(
                        load_image(os.path.join(path, item["file"])))
                entries[key][int(bit)] = Entry(item["status"], image,
                                               item["reason"], item["plan"])
        with self._lock:
            self._entries = entries
        self.path = path
        logger.info("Loaded codebook of %d glyphs from: %s"
                    % (len(entries), path))
