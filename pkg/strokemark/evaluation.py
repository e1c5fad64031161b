# Copyright (c) 2026 strokemark developers
# MIT License

"""
Robustness and imperceptibility evaluation over a glyph corpus, and the
document-level experiments.

Glyph level (`Evaluator`): for every corpus glyph, both bits are
embedded; every encoded glyph is passed through every configured attack
and decoded again.  The report holds the extraction accuracy (ACC) per
font, size and attack, the mean PSNR/SSIM of the encoded glyphs against
their covers, and the counts of non-embeddable glyphs and infeasible
embeddings.  Two sweeps reuse the same loop: the print-camera viewing
angle and distance scale, and the fixed movement distance.

Two accuracies are reported:

acc :
    over the successful embeddings only;
acc_all :
    over every embedding attempt on a glyph with a handle, counting the
    infeasible ones as errors.

Document level (`DocumentEvaluator`): seeded message round trips over a
rendered page, with bit flips injected into the carrier stream, and the
partial interception of consecutive words.
"""

import os
import glob
import logging
import time
from collections import OrderedDict

import numpy as np
import pandas as pd

from . import __version__
from .channel import apply, attack_name, make_attack
from .codec import (Codebook, embed_document, extract_document,
                    inject_flips, recover_message)
from .codec.whitening import parse_key
from .decoder import decode_glyph
from .encoder import embed_bit
from .errors import EmbedInfeasible, ImageIOError, NonEmbeddable
from .glyphs import corpus as synthetic_corpus, render_page
from .params import EmbedParams
from .quality import psnr, ssim
from .raster import binarize, load_image
from .utils.io import csv_to_dataframe, dataframe_to_csv, write_json
from .utils.random import make_rng


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# Embedding status of the records
EMBED_OK = "ok"
EMBED_UNCHANGED = "unchanged"
EMBED_INFEASIBLE = "infeasible"
EMBED_NONEMBEDDABLE = "nonembeddable"

ACC_COLUMNS = ["attempts", "embedded", "correct", "acc", "acc_all"]


def _log_time(label, t_cost):
    if t_cost <= 3*60:
        logger.info("%s : %.1f [sec]" % (label, t_cost))
    else:
        logger.info("%s : %.1f [min]" % (label, t_cost/60))


def load_corpus_dir(corpus_dir):
    """
    Load the PNG glyphs of a corpus directory (sorted by name).

    Returns
    -------
    items : list[dict]
        ``{"name", "letter", "font", "size", "image"}``
    skipped : list[dict]
        The unreadable files with the reason.
    """
    items, skipped = [], []
    for path in sorted(glob.glob(os.path.join(corpus_dir, "*.png"))):
        name = os.path.splitext(os.path.basename(path))[0]
        try:
            image = load_image(path)
        except ImageIOError as e:
            logger.warning("Skipped corpus file: %s" % e)
            skipped.append({"name": name, "reason": e.reason})
            continue
        items.append({"name": name, "letter": name, "font": "file",
                      "size": int(min(image.shape)), "image": image})
    return (items, skipped)


def acc_table(records, keys):
    """
    Extraction accuracy of the records grouped by the given columns.

    The non-embeddable glyphs are excluded; ``acc`` is over the
    successful embeddings (NaN without any) and ``acc_all`` over every
    attempt.
    """
    df = records[records["status"] != EMBED_NONEMBEDDABLE].copy()
    if df.empty:
        return pd.DataFrame(columns=list(keys) + ACC_COLUMNS)
    df["embedded"] = df["status"].isin([EMBED_OK, EMBED_UNCHANGED])
    df["correct_embedded"] = df["correct"].astype(bool) & df["embedded"]
    grouped = df.groupby(list(keys), sort=True)
    out = grouped.agg(attempts=("correct", "size"),
                      embedded=("embedded", "sum"),
                      correct=("correct_embedded", "sum"))
    out["acc"] = np.where(out["embedded"] > 0,
                          100.0 * out["correct"] /
                          out["embedded"].clip(lower=1), np.nan)
    out["acc_all"] = 100.0 * out["correct"] / out["attempts"]
    return out.reset_index()


def summarize_records(records):
    """
    ACC per (font, size, attack) and per attack.

    Returns
    -------
    groups : `~pandas.DataFrame`
    attacks : `~pandas.DataFrame`
    """
    return (acc_table(records, ["font", "size", "attack"]),
            acc_table(records, ["attack"]))


def summarize_csv(csvfile):
    """
    Summarize the evaluation records saved by `Evaluator.write_report`.

    Returns
    -------
    attacks : `~pandas.DataFrame`
        ACC per attack.
    """
    records, comments = csv_to_dataframe(csvfile)
    logger.info("Loaded %d records from: %s" % (len(records), csvfile))
    for line in comments:
        logger.debug("CSV comment: %s" % line)
    return summarize_records(records)[1]


def table_rows(df):
    """DataFrame rows as JSON-friendly dictionaries (NaN -> None)."""
    return [OrderedDict((k, (None if pd.isna(v) else
                             (v.item() if hasattr(v, "item") else v)))
                        for k, v in row.items())
            for row in df.to_dict(orient="records")]


class Evaluator:
    """
    Run the robustness/imperceptibility evaluation.

    Parameters
    ----------
    configs : `~strokemark.configs.ConfigManager`
        The configurations; the ``[evaluation]`` section selects the
        corpus, the attacks and the ablation mode.

    Attributes
    ----------
    records : `~pandas.DataFrame`
        One row per (glyph, bit, attack).
    quality : `~pandas.DataFrame`
        One row per successful (glyph, bit) embedding with PSNR/SSIM.
    """
    def __init__(self, configs):
        self.configs = configs
        self._set_configs()
        self.records = None
        self.quality = None
        self.skipped = []
        self.elapsed = None

    def _set_configs(self):
        """
        Load the configs and set the corresponding class attributes.
        """
        conf = self.configs.get("evaluation")
        self.attack_names = list(conf["attacks"])
        self.fonts = list(conf["fonts"])
        self.sizes = [int(s) for s in conf["sizes"]]
        self.letters = list(conf["letters"]) or None
        self.corpus_dir = self.configs.get_path("evaluation/corpus_dir")
        self.ablation = conf["ablation"]
        self.camera_angles = [float(a) for a in conf["camera_angles"]]
        self.camera_distances = [float(d) for d in conf["camera_distances"]]
        self.fixed_distances = [float(d) for d in conf["fixed_distances"]]
        self.seed = self.configs.getn("channel/seed")
        self.presets = self.configs.attack_presets
        self.attacks = [make_attack(name, self.presets, self.seed)
                        for name in self.attack_names]
        self.clobber = self.configs.getn("output/clobber")
        logger.info("Attacks: %s" % ", ".join(self.attack_names))
        logger.info("Ablation mode: %s" % self.ablation)

    def load_corpus(self):
        if self.corpus_dir:
            logger.info("Loading corpus from: %s" % self.corpus_dir)
            items, self.skipped = load_corpus_dir(self.corpus_dir)
        else:
            items = []
            for item in synthetic_corpus(self.fonts, self.sizes,
                                         self.letters):
                item["name"] = "%s-%s-%d" % (item["letter"], item["font"],
                                             item["size"])
                items.append(item)
        logger.info("Corpus of %d glyphs" % len(items))
        return items

    def _attack_seed(self, name, bit, attack):
        rng = make_rng(self.seed, name, bit, attack_name(attack))
        return int(rng.integers(0, 2**32))

    def item_params(self, item):
        """The embedding parameters of a corpus glyph."""
        params = EmbedParams.from_configs(self.configs, item["size"])
        return params.ablated(self.ablation)

    def evaluate_item(self, item, params=None, attacks=None, labels=()):
        """
        Embed both bits into one glyph, attack and decode them.

        Parameters
        ----------
        params : `~strokemark.params.EmbedParams`, optional
            Default to `item_params`.
        attacks : list[`~strokemark.channel.AttackSpec`], optional
            Default to the configured attacks.
        labels : list[str], optional
            Attack parameters copied into the rows as columns.

        Returns
        -------
        rows : list[dict]
        quality : list[dict]
        """
        if params is None:
            params = self.item_params(item)
        if attacks is None:
            attacks = self.attacks
        base = OrderedDict([(k, item[k]) for k in ("name", "letter", "font",
                                                    "size")])
        rows, quality = [], []
        for bit in (0, 1):
            encoded, reason = None, ""
            try:
                encoded = embed_bit(item["image"], bit, params)
            except NonEmbeddable as e:
                status, reason = EMBED_NONEMBEDDABLE, e.reason
            except EmbedInfeasible as e:
                status, reason = EMBED_INFEASIBLE, e.reason
            else:
                status = EMBED_OK if encoded.plan.moved else EMBED_UNCHANGED
                cover = binarize(item["image"])
                quality.append(dict(base, bit=bit, status=status,
                                    psnr=psnr(cover, encoded.image),
                                    ssim=ssim(cover, encoded.image)))
            for attack in attacks:
                row = dict(base, bit=bit, attack=attack_name(attack),
                           status=status, reason=reason, decoded=None,
                           gap=None, correct=False)
                for key in labels:
                    row[key] = attack.params.get(key)
                if encoded is not None:
                    spec = attack._replace(
                        seed=self._attack_seed(item["name"], bit, attack))
                    try:
                        reading = decode_glyph(apply(encoded.image, spec),
                                               params)
                    except NonEmbeddable as e:
                        row["reason"] = "not decodable: %s" % e.reason
                    else:
                        row.update(decoded=reading.bit, gap=reading.gap,
                                   correct=(reading.bit == bit))
                rows.append(row)
        return (rows, quality)

    def run(self):
        """
        Evaluate the whole corpus.
        """
        t_start = time.perf_counter()
        rows, quality = [], []
        for item in self.load_corpus():
            logger.info("Evaluating glyph: %s" % item["name"])
            r, q = self.evaluate_item(item)
            rows.extend(r)
            quality.extend(q)
        self.records = pd.DataFrame(rows)
        self.quality = pd.DataFrame(quality)
        self.elapsed = time.perf_counter() - t_start
        logger.info("==================================================")
        _log_time("Evaluation time", self.elapsed)
        logger.info("==================================================")
        return self.records

    def sweep_camera(self, angles=None, distances=None):
        """
        ACC of the print-camera channel over a grid of viewing angles
        [deg] and distance scales (default to the configured grid).

        Returns
        -------
        table : `~pandas.DataFrame`
            One row per (angle, distance).
        """
        angles = self.camera_angles if angles is None else angles
        distances = (self.camera_distances if distances is None
                     else distances)
        attacks = [make_attack("print_camera", self.presets, self.seed,
                               angle=float(a), distance=float(d))
                   for a in angles for d in distances]
        rows = []
        for item in self.load_corpus():
            logger.info("Camera sweep of glyph: %s" % item["name"])
            r, __ = self.evaluate_item(item, attacks=attacks,
                                       labels=("angle", "distance"))
            rows.extend(r)
        return acc_table(pd.DataFrame(rows), ["angle", "distance"])

    def sweep_distance(self, distances=None):
        """
        Imperceptibility and ACC against the fixed movement distance
        (given at the reference scale; default to the configured list).

        The decode verification is disabled, so that the movements too
        short to cross the threshold are measured rather than rejected.

        Returns
        -------
        table : `~pandas.DataFrame`
            One row per (fixed_distance, attack) with the mean PSNR/SSIM
            of the embeddings at that distance.
        """
        distances = (self.fixed_distances if distances is None
                     else distances)
        reference = self.configs.getn("embed/reference_size")
        rows, quality = [], []
        for item in self.load_corpus():
            logger.info("Distance sweep of glyph: %s" % item["name"])
            base = self.item_params(item)
            for dist in distances:
                params = base.replace(
                    fixed_distance=float(dist) * item["size"] / reference,
                    verify=False)
                r, q = self.evaluate_item(item, params=params)
                for row in r + q:
                    row["fixed_distance"] = float(dist)
                rows.extend(r)
                quality.extend(q)
        table = acc_table(pd.DataFrame(rows), ["fixed_distance", "attack"])
        if quality:
            means = pd.DataFrame(quality).groupby("fixed_distance").agg(
                psnr=("psnr", "mean"), ssim=("ssim", "mean"))
            table = table.merge(means.reset_index(), on="fixed_distance",
                                how="left")
        return table

    def summarize(self):
        """
        ACC per (font, size, attack) and per attack.

        Returns
        -------
        groups : `~pandas.DataFrame`
        attacks : `~pandas.DataFrame`
        """
        return summarize_records(self.records)

    def report(self):
        """
        The machine-readable evaluation report.
        """
        if self.records is None:
            raise RuntimeError("evaluation not run yet")
        groups, attacks = self.summarize()
        records = self.records
        nglyphs = records["name"].nunique() if not records.empty else 0
        first = records.drop_duplicates(["name", "bit"]) \
            if not records.empty else records
        counts = OrderedDict([
            ("glyphs", int(nglyphs)),
            ("nonembeddable", int((first["status"] ==
                                   EMBED_NONEMBEDDABLE).sum()
                                  if not first.empty else 0)),
            ("infeasible", int((first["status"] == EMBED_INFEASIBLE).sum()
                               if not first.empty else 0)),
            ("embedded", int(len(self.quality))),
            ("unchanged", int((self.quality["status"] ==
                               EMBED_UNCHANGED).sum()
                              if not self.quality.empty else 0)),
        ])
        quality = OrderedDict([("psnr", None), ("ssim", None)])
        if not self.quality.empty:
            quality["psnr"] = float(self.quality["psnr"].mean())
            quality["ssim"] = float(self.quality["ssim"].mean())

        return OrderedDict([
            ("schema_version", SCHEMA_VERSION),
            ("version", __version__),
            ("ablation", self.ablation),
            ("attacks", [OrderedDict([("name", attack_name(a)),
                                      ("kind", a.kind),
                                      ("params", dict(a.params)),
                                      ("seed", a.seed)])
                         for a in self.attacks]),
            ("counts", counts),
            ("quality", quality),
            ("acc", table_rows(attacks)),
            ("groups", table_rows(groups)),
            ("skipped", self.skipped),
            ("elapsed", self.elapsed),
        ])

    def write_report(self, outfile, csvfile=None):
        """Write the JSON report, and optionally the records as CSV."""
        write_json(outfile, self.report(), clobber=self.clobber)
        if csvfile:
            dataframe_to_csv(self.records, csvfile, clobber=self.clobber)


def compose_page(words, per_line):
    """The page text with ``per_line`` words per line."""
    if per_line < 1:
        raise ValueError("words per line must be >= 1")
    lines = [" ".join(words[i:i+per_line])
             for i in range(0, len(words), per_line)]
    return "\n".join(lines)


def word_index(text):
    """The word index of every letter of the page text, in reading order."""
    index = []
    for nword, word in enumerate(text.split()):
        index.extend([nword] * len(word))
    return index


class DocumentEvaluator:
    """
    Seeded document round trips on a rendered page.

    Parameters
    ----------
    configs : `~strokemark.configs.ConfigManager`
        The ``[document]`` section sets the character size, padding and
        key; the ``[evaluation]`` section the page, the number of trials
        and the flip rate, the message lengths and the word counts.
    """
    def __init__(self, configs):
        self.configs = configs
        self._set_configs()
        self.codebook = Codebook()
        self._page = None

    def _set_configs(self):
        conf = self.configs.get("evaluation")
        self.words = list(conf["page_words"])
        self.per_line = conf["words_per_line"]
        self.font = conf["page_font"]
        self.trials = conf["trials"]
        self.flip_rate = conf["flip_rate"]
        self.lengths = [int(n) for n in conf["message_lengths"]]
        self.word_counts = [int(n) for n in conf["word_counts"]]
        self.char_size = self.configs.getn("document/char_size")
        self.pad = self.configs.getn("document/pad")
        self.key = parse_key(self.configs.getn("document/key"))
        self.seed = self.configs.getn("channel/seed")
        self.attack = make_attack(conf["page_attack"],
                                  self.configs.attack_presets, self.seed)
        self.params = EmbedParams.from_configs(self.configs, self.char_size)

    @property
    def text(self):
        return compose_page(self.words, self.per_line)

    @property
    def page(self):
        if self._page is None:
            self._page = render_page(self.text, font=self.font,
                                     size=self.char_size)
        return self._page

    def round_trip(self, message, trial=0):
        """
        Embed the message, pass the page through the configured attack
        and extract the carrier stream.

        Returns
        -------
        embedding : `~strokemark.codec.document.DocumentEmbedding`
        report : `~strokemark.codec.document.ExtractionReport`
        """
        embedding = embed_document(self.page, message, self.params,
                                   key=self.key, pad=self.pad,
                                   codebook=self.codebook)
        spec = self.attack._replace(
            seed=int(make_rng(self.seed, "page", trial).integers(0, 2**32)))
        report = extract_document(apply(embedding.page, spec), self.params,
                                  len(message), key=self.key, pad=self.pad)
        return (embedding, report)

    def _message(self, rng, length):
        return rng.integers(0, 2, size=length).astype(np.uint8)

    def recovery_trials(self, length=None, trials=None, flip_rate=None):
        """
        Recover random messages from the page, as read and with the bits
        of the carrier stream flipped independently at ``flip_rate``.

        Returns
        -------
        table : `~pandas.DataFrame`
            One row per trial: the carriers, whether the message is
            recovered exactly as read, the flipped reads, and the bit
            accuracy [%] and exact recovery after the flips.
        """
        length = (self.configs.getn("document/message_length")
                  if length is None else length)
        trials = self.trials if trials is None else trials
        flip_rate = self.flip_rate if flip_rate is None else flip_rate
        rows = []
        for trial in range(trials):
            rng = make_rng(self.seed, "recovery", trial)
            message = self._message(rng, length)
            __, report = self.round_trip(message, trial)
            stream = report.stream
            clean, __ = recover_message(stream, length, key=self.key)
            flipped = inject_flips(stream, flip_rate, rng)
            recovered, __ = recover_message(flipped, length, key=self.key)
            accuracy = 100.0 * float(np.mean(recovered == message))
            rows.append({"trial": trial, "carriers": len(stream),
                         "clean": bool(np.array_equal(clean, message)),
                         "flipped": int(np.sum(np.asarray(flipped) !=
                                               np.asarray(stream))),
                         "accuracy": accuracy,
                         "recovered": bool(accuracy == 100.0)})
            logger.info("Trial %d: %d carriers, accuracy %.1f%%" %
                        (trial, len(stream), accuracy))
        return pd.DataFrame(rows)

    def partial_interception(self, lengths=None, word_counts=None,
                             trials=None):
        """
        Recover the message from consecutive words only.

        The verifier holds the original page, so the position of the
        captured words (and of their carriers) in the bit stream is
        known; the other carriers take no part in the vote.

        Returns
        -------
        table : `~pandas.DataFrame`
            One row per (length, words): the mean bit accuracy [%] and
            the share of exactly recovered messages [%].
        """
        lengths = self.lengths if lengths is None else lengths
        word_counts = (self.word_counts if word_counts is None
                       else word_counts)
        trials = self.trials if trials is None else trials
        words_of = word_index(self.text)
        nwords = len(self.words)
        if any(not 1 <= n <= nwords for n in word_counts):
            raise ValueError("word counts must be in [1, %d]: %s"
                             % (nwords, word_counts))
        rows = []
        for length in lengths:
            results = {n: [] for n in word_counts}
            for trial in range(trials):
                rng = make_rng(self.seed, "interception", length, trial)
                message = self._message(rng, length)
                __, report = self.round_trip(message, trial)
                if len(report.characters) != len(words_of):
                    raise ValueError("page segments into %d characters, "
                                     "the text has %d letters" %
                                     (len(report.characters),
                                      len(words_of)))
                carriers = [c for c in report.characters if c["carrier"]]
                for n in word_counts:
                    start = int(rng.integers(0, nwords - n + 1))
                    stream = [None] * len(carriers)
                    for k, c in enumerate(carriers):
                        if start <= words_of[c["index"]] < start + n:
                            stream[k] = report.stream[k]
                    recovered, __ = recover_message(stream, length,
                                                    key=self.key)
                    accuracy = 100.0 * float(np.mean(recovered == message))
                    results[n].append((accuracy, accuracy == 100.0))
            for n in word_counts:
                acc = np.array(results[n], dtype=float)
                rows.append({"length": length, "words": n,
                             "trials": trials,
                             "accuracy": float(acc[:, 0].mean()),
                             "success": 100.0 * float(acc[:, 1].mean())})
                logger.info("Interception of %d words, %d bits: success "
                            "%.1f%%" % (n, length, rows[-1]["success"]))
        return pd.DataFrame(rows)
