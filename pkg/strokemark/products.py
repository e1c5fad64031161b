# Copyright (c) 2026 strokemark developers
# MIT License

"""
Manage the manifest of a document embedding.
"""

import os
import shutil
import json
import logging
from collections import OrderedDict

import numpy as np

from .errors import ManifestError
from .utils.hashutil import calc_md5


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class EmbedManifest:
    """
    The manifest of a document embedding: the output page and the fate
    of every character.  It is for diagnostics only; the extraction does
    not need it.

    Parameters
    ----------
    manifestfile : str, optional
        The path to the manifest file for loading.
    load : bool, optional
        Load the specified manifest file if ``True``.

    Manifest Format
    ---------------
    ``
    {
        "schema_version" : 1,
        "page" : {
            "path" : <path to the encoded page, relative to the manifest>,
            "size" : <file size (bytes)>,
            "md5" : <md5 checksum>,
            "shape" : [ <height>, <width> ],
        },
        "message" : {
            "length" : <message length L>,
            "whitened" : <whether a key was used>,
        },
        "capacity" : <number of carrier characters>,
        "repetitions" : <floor(capacity / L)>,
        "params" : { <embedding parameters> },
        "characters" : [
            {
                "index" : <reading-order index>,
                "box" : [ x, y, w, h ],
                "carrier" : <bool>,
                "status" : "ok" | "unchanged" | "skipped" | "not_carrier",
                "reason" : <why skipped>,
                "position" : <carrier position>,
                "message_index" : <message bit index>,
                "bit" : <embedded (whitened) bit>,
                "plan" : { <handle, reference, target, ...> },
            },
            ...
        ],
    }
    ``
    """
    def __init__(self, manifestfile=None, load=True):
        self.manifest = OrderedDict()
        self.manifestfile = manifestfile
        if (manifestfile is not None) and load:
            self.load(manifestfile)

    @classmethod
    def from_embedding(cls, embedding, params, whitened=False):
        """
        Create the manifest of a `~strokemark.codec.document
        .DocumentEmbedding`.
        """
        obj = cls()
        obj.manifest.update([
            ("schema_version", SCHEMA_VERSION),
            ("page", OrderedDict([
                ("shape", list(np.shape(embedding.page))),
            ])),
            ("message", OrderedDict([
                ("length", embedding.length),
                ("whitened", bool(whitened)),
            ])),
            ("capacity", embedding.capacity),
            ("repetitions", embedding.repetitions),
            ("params", params.as_dict()),
            ("characters", embedding.records),
        ])
        return obj

    @property
    def characters(self):
        return self.manifest.get("characters", [])

    def count(self, status):
        """Number of the characters of the given status."""
        return sum(1 for c in self.characters if c["status"] == status)

    def summary(self):
        statuses = sorted(set(c["status"] for c in self.characters))
        return OrderedDict([(s, self.count(s)) for s in statuses])

    def add_page(self, filepath):
        """
        Record the encoded page file, its size and checksum.

        Raises
        ------
        ManifestError :
            The file does not exist.
        """
        if not os.path.exists(filepath):
            raise ManifestError("Page file not exist: %s" % filepath)
        page = self.manifest.setdefault("page", OrderedDict())
        if self.manifestfile:
            root = os.path.dirname(os.path.abspath(self.manifestfile))
            page["path"] = os.path.relpath(os.path.abspath(filepath), root)
        else:
            page["path"] = os.path.abspath(filepath)
        page["size"] = os.path.getsize(filepath)
        page["md5"] = calc_md5(filepath)
        logger.info("Added page to manifest: %s" % page["path"])

    def get_page_abspath(self):
        page = self.manifest.get("page", {})
        if "path" not in page:
            raise ManifestError("No page recorded in the manifest")
        path = page["path"]
        if not os.path.isabs(path) and self.manifestfile:
            root = os.path.dirname(os.path.abspath(self.manifestfile))
            path = os.path.join(root, path)
        return path

    def checksum(self):
        """
        Verify the recorded page against its size and md5 checksum.

        Returns
        -------
        match : bool
        """
        page = self.manifest.get("page", {})
        filepath = self.get_page_abspath()
        if not os.path.exists(filepath):
            raise ManifestError("Page file not exist: %s" % filepath)
        if os.path.getsize(filepath) != page.get("size"):
            logger.warning("Page file size changed: %s" % filepath)
            return False
        match = (calc_md5(filepath) == page.get("md5"))
        if not match:
            logger.warning("Page file md5 changed: %s" % filepath)
        return match

    def reset(self):
        self.manifest = OrderedDict()
        self.manifestfile = None

    def dump(self, outfile=None, clobber=False, backup=True):
        """
        Dump the manifest as a JSON file.

        Parameters
        ----------
        outfile : str, optional
            The path to the output manifest file.
            If not provided, then use ``self.manifestfile``.
            Prefix ``~`` (tilde) is allowed and will be expanded.
        clobber : bool, optional
            Overwrite the output file if already exists.
        backup : bool, optional
            Backup the output file with suffix ``.old`` if already exists.

        Raises
        ------
        ValueError :
            ``self.manifestfile`` is ``None`` while the ``outfile`` is
            missing.
        OSError :
            If the target filename already exists and ``clobber=False``.
        """
        if outfile is None:
            if self.manifestfile is None:
                raise ValueError("outfile is missing and " +
                                 "self.manifestfile is None")
            outfile = self.manifestfile
        outfile = os.path.expanduser(outfile)
        if os.path.exists(outfile):
            if clobber:
                if backup:
                    backfile = outfile + ".old"
                    shutil.copyfile(outfile, backfile)
                    logger.info("Backed up old manifest file as: " + backfile)
            else:
                raise OSError("File already exists: {0}".format(outfile))
        dirname = os.path.dirname(outfile)
        if dirname and not os.path.exists(dirname):
            os.makedirs(dirname)

        with open(outfile, "w") as fp:
            json.dump(self.manifest, fp, indent=2)
            fp.write("\n")
        self.manifestfile = outfile
        logger.info("Dumped manifest to file: {0}".format(outfile))

    def load(self, infile):
        """
        Load the manifest from a JSON file.

        Raises
        ------
        ManifestError :
            Unsupported schema version.
        OSError :
            Cannot read the input manifest file.
        """
        infile = os.path.expanduser(infile)
        self.reset()
        with open(infile) as fp:
            manifest = json.load(fp, object_pairs_hook=OrderedDict)
        if manifest.get("schema_version") != SCHEMA_VERSION:
            raise ManifestError("Unsupported manifest schema: %s"
                                % manifest.get("schema_version"))
        self.manifest = manifest
        self.manifestfile = infile
        logger.info("Loaded manifest from file: {0}".format(infile))
