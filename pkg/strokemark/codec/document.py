# Copyright (c) 2026 strokemark developers
# MIT License

"""
Document embedding and extraction.

embed_document :
    segment the page -> find the carriers -> whiten the message -> assign
    the bits cyclically to the carriers -> embed every carrier (through
    the codebook) -> keep the edit only if it stays clear of the other
    characters, keeps the character's components, and the character
    still is a carrier decoding to its bit.
extract_document :
    clean up and segment the (possibly attacked) page -> decode every
    carrier -> majority vote -> unwhiten.

A character is a carrier when its analysis selects a handle and the
targets of *both* bits can be planned (`~strokemark.encoder.can_carry`).
The test needs the glyph only, so the embedder and the extractor agree
on the carriers without side information: a glyph that cannot take one
of the bits is no carrier on either side.
"""

import logging
from collections import namedtuple

import numpy as np
from scipy import ndimage

from ..decoder import analyze, read_analysis
from ..encoder import can_carry
from ..errors import CapacityError, NonEmbeddable
from ..raster import (BLACK, STRUCT8, binarize, from_mask,
                      remove_small_components, text_mask)
from ..utils.hashutil import array_md5
from .codebook import Codebook, INFEASIBLE, NONEMBEDDABLE, UNCHANGED
from .layout import crop_character, paste_character, segment
from .repetition import assign_positions, majority_vote, repetitions
from .whitening import unwhiten, whiten


logger = logging.getLogger(__name__)

# Character status in the embedding records
CARRIER_OK = "ok"
CARRIER_UNCHANGED = "unchanged"
CARRIER_SKIPPED = "skipped"
NOT_CARRIER = "not_carrier"


DocumentEmbedding = namedtuple("DocumentEmbedding", [
    "page", "records", "capacity", "repetitions", "length",
])
DocumentEmbedding.__doc__ = """
The encoded page, one record (dict) per character in reading order, the
number of carriers, the number of full message repetitions and the
message length.
"""


class ExtractionReport:
    """
    The result of a document extraction.

    Attributes
    ----------
    characters : list[dict]
        Per character: index, box, carrier, and for the carriers the
        measured gap, decided bit, confidence and gap axis.
    stream : list[int]
        The raw (whitened) bits read from the carriers in reading order.
    message : ``uint8`` `~numpy.ndarray` or None
        The recovered message; ``None`` without any carrier.
    margins, votes : ``int`` `~numpy.ndarray` or None
        The vote margins and vote counts of every message bit.
    diagnostic : str
    """
    def __init__(self, characters, stream, message, margins, votes,
                 diagnostic=""):
        self.characters = characters
        self.stream = stream
        self.message = message
        self.margins = margins
        self.votes = votes
        self.diagnostic = diagnostic

    @property
    def capacity(self):
        return len(self.stream)

    def as_dict(self):
        def _list(a):
            return None if a is None else [int(v) for v in a]
        return {
            "characters": self.characters,
            "capacity": self.capacity,
            "stream": [int(b) for b in self.stream],
            "message": _list(self.message),
            "margins": _list(self.margins),
            "votes": _list(self.votes),
            "diagnostic": self.diagnostic,
        }


def clean_page(page, params):
    """
    Binarize the page by Otsu's method and drop the specks smaller than
    the minimum area; the per-character analysis applies the rest of
    the clean-up to every crop.
    """
    mask = text_mask(binarize(page))
    if params.min_area > 1:
        mask = remove_small_components(mask, params.min_area)
    return from_mask(mask)




def _box_center(box):
    x, y, w, h = box
    return (x + w / 2.0, y + h / 2.0)


def _inside(p, box):
    x, y, w, h = box
    return x <= p[0] < x + w and y <= p[1] < y + h


def _same_layout(layout, new_layout):
    """Whether the new layout keeps the characters and their order."""
    if len(new_layout) != len(layout):
        return False
    for old, new in zip(layout.characters, new_layout.characters):
        if not (_inside(_box_center(old.box), new.box) and
                _inside(_box_center(new.box), old.box)):
            return False
    return True


def _touches_border(original, edited):
    """New text pixels on the border of the crop."""
    new = (np.asarray(edited) == BLACK) & (np.asarray(original) != BLACK)
    return bool(new[0, :].any() or new[-1, :].any() or
                new[:, 0].any() or new[:, -1].any())


def _text_box(crop):
    ys, xs = np.nonzero(text_mask(crop))
    return (int(xs.min()), int(ys.min()), int(xs.max() - xs.min() + 1),
            int(ys.max() - ys.min() + 1))


class CarrierTest:
    """
    The carrier test of the character crops, memoized by the crop
    content: the repeated letters of a page are analyzed once.
    """
    def __init__(self, params):
        self.params = params
        self._cache = {}

    def __call__(self, crop):
        """
        The analysis of the crop if it is a carrier, else ``None``.
        """
        key = array_md5(binarize(crop))
        if key not in self._cache:
            try:
                analysis = analyze(crop, self.params)
            except NonEmbeddable:
                analysis = None
            if analysis is not None and not can_carry(analysis, self.params):
                analysis = None
            self._cache[key] = analysis
        return self._cache[key]


def find_carriers(page, layout, params, pad, test=None):
    """The indexes of the carrier characters, in reading order."""
    if test is None:
        test = CarrierTest(params)
    carriers = []
    for idx, char in enumerate(layout.characters):
        crop, __ = crop_character(page, layout, char, pad)
        if test(crop) is not None:
            carriers.append(idx)
    return carriers


def embed_document(page, message, params, key=None, pad=8, codebook=None,
                   backend=None):
    """
    Embed the message into the characters of the page.

    Parameters
    ----------
    page : 2D ``uint8`` `~numpy.ndarray`
        The cover page (binarized by Otsu's method if gray).
    message : sequence of int
        The message bits.
    params : `~strokemark.params.EmbedParams`
        Parameters scaled to the nominal character size.
    key : str or bytes, optional
        The 128-bit whitening key; no whitening if empty.
    pad : int
        White padding around every character crop.
    codebook : `~strokemark.codec.Codebook`, optional

    Returns
    -------
    result : `DocumentEmbedding`

    Raises
    ------
    CapacityError :
        No character of the page can carry a bit.
    """
    message = np.asarray(message, dtype=np.uint8).ravel()
    if message.size == 0:
        raise ValueError("empty message")
    if codebook is None:
        codebook = Codebook()
    cover = clean_page(page, params)
    layout = segment(cover)
    test = CarrierTest(params)
    carriers = find_carriers(cover, layout, params, pad, test=test)
    capacity = len(carriers)
    if capacity == 0:
        raise CapacityError("no embeddable characters among %d"
                            % len(layout))
    length = message.size
    nrep = repetitions(capacity, length)
    logger.info("Page has %d characters, %d carriers; %d full "
                "repetitions of the %d-bit message" %
                (len(layout), capacity, nrep, length))

    whitened = whiten(message, key)
    index = assign_positions(capacity, length)
    out = cover.copy()
    records = []
    position_of = {c: k for k, c in enumerate(carriers)}
    for idx, char in enumerate(layout.characters):
        record = {"index": idx, "box": list(char.box), "carrier": False,
                  "status": NOT_CARRIER, "reason": ""}
        records.append(record)
        if idx not in position_of:
            continue
        k = position_of[idx]
        bit = int(whitened[index[k]])
        record.update({"carrier": True, "position": k,
                       "message_index": int(index[k]), "bit": bit})
        crop, region = crop_character(out, layout, char, pad)
        entry = codebook.encode(crop, bit, params, backend=backend)
        if entry.status in (INFEASIBLE, NONEMBEDDABLE):
            record.update({"status": CARRIER_SKIPPED, "reason": entry.reason})
            logger.warning("Character #%d: bit %d not embedded: %s"
                           % (idx, bit, entry.reason))
            continue
        record["plan"] = entry.plan
        if entry.status == UNCHANGED:
            record["status"] = CARRIER_UNCHANGED
            continue
        reason = _check_edit(out, layout, char, crop, entry.image, region,
                             bit, params, test)
        if reason:
            record.update({"status": CARRIER_SKIPPED, "reason": reason})
            logger.warning("Character #%d: edit rejected: %s"
                           % (idx, reason))
            continue
        paste_character(out, crop, entry.image, region)
        bx, by, bw, bh = _text_box(entry.image)
        record["status"] = CARRIER_OK
        record["box"] = [region[2] + bx, region[0] + by, bw, bh]

    if not _same_layout(layout, segment(out)):
        logger.warning("The encoded page segments differently from the "
                       "cover")
    skipped = sum(r["status"] == CARRIER_SKIPPED for r in records)
    logger.info("Embedded %d of %d carriers (%d skipped)" %
                (capacity - skipped, capacity, skipped))
    return DocumentEmbedding(out, records, capacity, nrep, length)


def _check_edit(page, layout, char, crop, edited, region, bit, params,
                test):
    """
    Check an edited character crop before pasting it into the page:
    the new text pixels stay off the crop border and clear of the other
    characters, the component count and the box center are kept, and
    the edited character is a carrier decoding to its bit.

    Returns
    -------
    reason : str
        Why the edit is rejected; empty if accepted.
    """
    if _touches_border(crop, edited):
        return "encoded glyph touches the crop border"
    t, b, l, r = region
    new = (np.asarray(edited) == BLACK) & (np.asarray(crop) != BLACK)
    labels = layout.labels[t:b, l:r]
    others = (labels > 0) & ~np.isin(labels, char.labels)
    if (ndimage.binary_dilation(new, structure=STRUCT8) & others).any():
        return "encoded glyph touches a neighboring character"
    __, n_old = ndimage.label(text_mask(crop), structure=STRUCT8)
    __, n_new = ndimage.label(text_mask(edited), structure=STRUCT8)
    if n_new != n_old:
        return "component count changed"
    box = _text_box(edited)
    box = (l + box[0], t + box[1], box[2], box[3])
    if not (_inside(_box_center(char.box), box) and
            _inside(_box_center(box), char.box)):
        return "character box moved"
    analysis = test(edited)
    if analysis is None:
        return "encoded character is no carrier"
    if read_analysis(analysis, params).bit != bit:
        return "encoded character decodes to the wrong bit"
    return ""


def recover_message(stream, length, key=None, confidences=None):
    """
    Majority-vote the carrier bits into the message and unwhiten it.

    Returns
    -------
    message : ``uint8`` `~numpy.ndarray`
    vote : `~strokemark.codec.repetition.VoteResult`
    """
    vote = majority_vote(stream, length, confidences)
    return (unwhiten(vote.message, key), vote)


def extract_document(page, params, length, key=None, pad=8):
    """
    Extract the message from a (possibly attacked) page.

    Parameters
    ----------
    page : 2D ``uint8`` `~numpy.ndarray`
        The gray page; re-binarized and cleaned up first.
    params : `~strokemark.params.EmbedParams`
    length : int
        The message length.
    key : str or bytes, optional
        The whitening key used for the embedding.

    Returns
    -------
    report : `ExtractionReport`
    """
    binary = clean_page(page, params)
    layout = segment(binary)
    test = CarrierTest(params)
    characters = []
    stream, confidences = [], []
    for idx, char in enumerate(layout.characters):
        item = {"index": idx, "box": list(char.box), "carrier": False}
        characters.append(item)
        crop, __ = crop_character(binary, layout, char, pad)
        analysis = test(crop)
        if analysis is None:
            continue
        reading = read_analysis(analysis, params)
        item.update({"carrier": True, "position": len(stream),
                     "gap": reading.gap, "bit": reading.bit,
                     "confidence": reading.confidence,
                     "axis": reading.axis})
        stream.append(reading.bit)
        confidences.append(reading.confidence)

    if not stream:
        logger.warning("No carriers among %d characters" % len(layout))
        return ExtractionReport(characters, [], None, None, None,
                                diagnostic="no carriers")
    message, vote = recover_message(stream, length, key, confidences)
    diagnostic = ""
    if len(stream) < length:
        diagnostic = ("capacity %d below the message length %d"
                      % (len(stream), length))
    logger.info("Extracted %d bits from %d characters (%d carriers)" %
                (length, len(layout), len(stream)))
    return ExtractionReport(characters, stream, message, vote.margins,
                            vote.votes, diagnostic)
