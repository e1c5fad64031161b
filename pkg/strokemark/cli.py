# Copyright (c) 2026 strokemark developers
# MIT License

"""
Command line interface of ``strokemark``.

Sub-commands
------------
embed-glyph :
    embed one bit into a glyph image;
embed-doc :
    embed a message into the characters of a document page;
extract :
    extract the message from a page (or the bit of one glyph);
attack :
    apply a channel distortion to an image;
eval :
    run the robustness/imperceptibility evaluation, or one of the
    sweeps and document experiments;
codebook :
    build or inspect a codebook directory.

Exit status: 0 on success, 1 on usage or configuration errors, 2 when the
glyph/document cannot carry the data, 3 on I/O errors.
"""

import os
import sys
import json
import argparse
import logging
from collections import OrderedDict

from . import __version__
from .channel import apply, make_attack
from .codec import (Codebook, embed_document, extract_document,
                    format_message, parse_message)
from .codec.whitening import parse_key
from .debug import write_overlays
from .decoder import analyze, decode_glyph
from .encoder import embed_bit
from .errors import (CapacityError, ConfigError, ContractError,
                     EmbedInfeasible, ImageIOError, NonEmbeddable)
from .evaluation import (DocumentEvaluator, Evaluator, load_corpus_dir,
                         summarize_csv, table_rows)
from .mpe import trace_table
from .params import ABLATIONS, EmbedParams
from .products import EmbedManifest
from .raster import binarize, load_image, save_image
from .share import CONFIGS
from .utils.io import dataframe_to_csv, write_json
from .utils.logging import setup_logging


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EMBED = 2
EXIT_IO = 3


class ArgumentParser(argparse.ArgumentParser):
    """Exit with status 1 (instead of 2) on usage errors."""
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _parse_value(text):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_attack(text, presets, seed):
    """
    Parse an attack given as ``name`` or ``name:key=value,...``, e.g.,
    ``gaussian_noise:var=0.05``.
    """
    name, __, rest = text.partition(":")
    overrides = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError("invalid attack parameter: %s" % item)
        overrides[key.strip()] = _parse_value(value.strip())
    return make_attack(name.strip(), presets, seed, **overrides)


def _clobber(configs):
    return configs.getn("output/clobber")


def _glyph_params(configs, img):
    return EmbedParams.from_configs(configs, min(img.shape))


def _doc_params(configs):
    return EmbedParams.from_configs(configs,
                                    configs.getn("document/char_size"))


def cmd_embed_glyph(args, configs):
    img = load_image(args.infile)
    params = _glyph_params(configs, img).ablated(args.ablation or "full")
    logger.info("Parameters: %r" % params)
    encoded = embed_bit(img, args.bit, params)
    save_image(args.outfile, encoded.image, clobber=_clobber(configs))
    logger.info("Embedded bit %d (%s): %s" %
                (args.bit, "moved" if encoded.plan.moved else "unchanged",
                 args.outfile))
    if args.debug_dir:
        cover = binarize(img)
        write_overlays(args.debug_dir, cover, encoded,
                       analyze(cover, params, select=False))
    if args.trace_mpe:
        write_json(args.trace_mpe, trace_table(encoded.selection))
    return EXIT_OK


def cmd_embed_doc(args, configs):
    page = load_image(args.infile)
    length = args.length or None
    message = parse_message(args.message, length)
    key = parse_key(configs.getn("document/key"))
    params = _doc_params(configs)
    logger.info("Parameters: %r" % params)
    codebook = Codebook(configs.get_path("document/codebook"))
    embedding = embed_document(page, message, params, key=key,
                               pad=configs.getn("document/pad"),
                               codebook=codebook)
    save_image(args.outfile, embedding.page, clobber=_clobber(configs))
    if codebook.path:
        codebook.save(clobber=True)
    if args.manifest:
        manifest = EmbedManifest.from_embedding(embedding, params,
                                                whitened=key is not None)
        manifest.manifestfile = args.manifest
        manifest.add_page(args.outfile)
        manifest.dump(args.manifest, clobber=_clobber(configs))
        logger.info("Character status: %s" % dict(manifest.summary()))
    print("capacity=%d repetitions=%d length=%d" %
          (embedding.capacity, embedding.repetitions, embedding.length))
    return EXIT_OK


def cmd_extract(args, configs):
    img = load_image(args.infile)
    if args.glyph:
        params = _glyph_params(configs, img)
        reading = decode_glyph(img, params)
        report = {"bit": reading.bit, "gap": reading.gap,
                  "axis": reading.axis, "confidence": reading.confidence,
                  "handle": list(reading.handle),
                  "reference": list(reading.reference)}
        print(reading.bit)
    else:
        params = _doc_params(configs)
        length = args.length or configs.getn("document/message_length")
        key = parse_key(configs.getn("document/key"))
        result = extract_document(img, params, length, key=key,
                                  pad=configs.getn("document/pad"))
        report = result.as_dict()
        report["length"] = length
        if result.message is None:
            if args.report:
                write_json(args.report, report, clobber=_clobber(configs))
            raise CapacityError(result.diagnostic)
        report["message_text"] = format_message(result.message)
        print(report["message_text"])
    if args.report:
        write_json(args.report, report, clobber=_clobber(configs))
    return EXIT_OK


def cmd_attack(args, configs):
    img = load_image(args.infile)
    seed = configs.getn("channel/seed") if args.seed is None else args.seed
    spec = parse_attack(args.spec, configs.attack_presets, seed)
    logger.info("Attack: %s %s (seed %d)" % (spec.kind, spec.params,
                                               spec.seed))
    save_image(args.outfile, apply(img, spec), clobber=_clobber(configs))
    return EXIT_OK


EXPERIMENTS = ["robustness", "camera", "distance", "recovery",
               "interception"]


def _write_table(args, configs, name, table):
    report = OrderedDict([("experiment", name), ("version", __version__),
                          ("rows", table_rows(table))])
    write_json(args.report, report, clobber=_clobber(configs))
    if args.csv:
        dataframe_to_csv(table, args.csv, clobber=_clobber(configs))
    for row in report["rows"]:
        logger.info("%s: %s" % (name, dict(row)))


def cmd_eval(args, configs):
    if args.from_csv:
        table = summarize_csv(args.from_csv)
        _write_table(args, configs, "summary", table)
        return EXIT_OK
    if args.experiment == "robustness":
        evaluator = Evaluator(configs)
        evaluator.run()
        evaluator.write_report(args.report, csvfile=args.csv)
        for row in evaluator.report()["acc"]:
            logger.info("ACC[%s] = %s (all: %s)" %
                        (row["attack"], row["acc"], row["acc_all"]))
    elif args.experiment == "camera":
        _write_table(args, configs, args.experiment,
                     Evaluator(configs).sweep_camera())
    elif args.experiment == "distance":
        _write_table(args, configs, args.experiment,
                     Evaluator(configs).sweep_distance())
    elif args.experiment == "recovery":
        _write_table(args, configs, args.experiment,
                     DocumentEvaluator(configs).recovery_trials())
    else:
        _write_table(args, configs, args.experiment,
                     DocumentEvaluator(configs).partial_interception())
    return EXIT_OK


def cmd_codebook(args, configs):
    if args.action == "build":
        params = _doc_params(configs)
        items, skipped = load_corpus_dir(args.glyph_dir)
        if not items:
            raise ImageIOError(args.glyph_dir, "no readable PNG glyphs")
        codebook = Codebook(args.outdir)
        codebook.build([item["image"] for item in items], params)
        codebook.save(clobber=True)
        summary = codebook.inspect()
        summary["skipped"] = skipped
    else:
        if not os.path.exists(args.codebook):
            raise ImageIOError(args.codebook, "codebook not found")
        summary = Codebook(args.codebook).inspect()
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _add_param_flags(parser):
    group = parser.add_argument_group(
        "embedding parameters (at the reference scale)")
    group.add_argument("--tau", type=int)
    group.add_argument("--sigma", type=int)
    group.add_argument("--t-embed", dest="t_embed", type=int)
    group.add_argument("--margin", type=int)
    group.add_argument("--r-h", dest="r_h", type=int)
    group.add_argument("--backend")
    group.add_argument("--no-verify", dest="verify", action="store_false",
                       default=None,
                       help="keep embeddings failing the decode check")


def build_parser():
    parser = ArgumentParser(
        prog="strokemark",
        description="Structure-aware per-character watermarking of " +
                    "document and glyph images")
    parser.add_argument("-V", "--version", action="version",
                        version="%(prog)s " + __version__)
    parser.add_argument("-c", "--config", dest="config",
                        help="user configuration file")
    parser.add_argument("-l", "--log-level", dest="loglevel", default=None,
                        choices=["DEBUG", "INFO", "WARNING",
                                 "ERROR", "CRITICAL"],
                        help="override the log level")
    parser.add_argument("-L", "--logfile", default=None,
                        help="file where to save the log messages")
    parser.add_argument("-d", "--debug", action="store_true",
                        help="debug logging (same as --log-level DEBUG)")
    parser.add_argument("-C", "--clobber", action="store_true",
                        help="overwrite existing output files")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    p = subparsers.add_parser("embed-glyph", help="embed a bit into a glyph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bit", type=int, choices=[0, 1], required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--debug-dir", help="write the debug overlays here")
    p.add_argument("--trace-mpe", help="write the scored handle " +
                                       "candidates as JSON")
    p.add_argument("--ablation", choices=ABLATIONS)
    _add_param_flags(p)
    p.set_defaults(func=cmd_embed_glyph)

    p = subparsers.add_parser("embed-doc",
                              help="embed a message into a document page")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--message", required=True,
                   help="hexadecimal digits, or bits prefixed by 0b")
    p.add_argument("--key", help="128-bit whitening key (32 hex digits)")
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--manifest", help="write the embedding manifest here")
    p.add_argument("--length", type=int,
                   help="pad/truncate the message to this many bits")
    p.add_argument("--char-size", dest="char_size", type=int)
    p.add_argument("--codebook", help="codebook directory")
    _add_param_flags(p)
    p.set_defaults(func=cmd_embed_doc)

    p = subparsers.add_parser("extract", help="extract the message")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--key", help="128-bit whitening key (32 hex digits)")
    p.add_argument("--length", type=int, help="message length in bits")
    p.add_argument("--report", help="write the extraction report here")
    p.add_argument("--char-size", dest="char_size", type=int)
    p.add_argument("--glyph", action="store_true",
                   help="decode a single glyph instead of a page")
    _add_param_flags(p)
    p.set_defaults(func=cmd_extract)

    p = subparsers.add_parser("attack", help="apply a channel distortion")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--spec", required=True,
                   help="attack name, optionally followed by " +
                        "':key=value,...' parameters")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=cmd_attack)

    p = subparsers.add_parser("eval", help="run the evaluation")
    p.add_argument("--corpus", help="directory of PNG glyphs; the " +
                                    "synthetic corpus if not given")
    p.add_argument("--attacks", help="comma-separated attack names")
    p.add_argument("--ablation", choices=ABLATIONS)
    p.add_argument("--experiment", choices=EXPERIMENTS,
                   default="robustness")
    p.add_argument("--from-csv", dest="from_csv",
                   help="summarize the records CSV of an earlier run")
    p.add_argument("--report", required=True)
    p.add_argument("--csv", help="also write the records as CSV")
    _add_param_flags(p)
    p.set_defaults(func=cmd_eval)

    p = subparsers.add_parser("codebook", help="build/inspect a codebook")
    actions = p.add_subparsers(dest="action", metavar="action")
    actions.required = True
    pb = actions.add_parser("build", help="encode a directory of glyphs")
    pb.add_argument("--glyph-dir", dest="glyph_dir", required=True)
    pb.add_argument("--out", dest="outdir", required=True)
    pb.add_argument("--char-size", dest="char_size", type=int)
    pi = actions.add_parser("inspect", help="summarize a codebook")
    pi.add_argument("--codebook", required=True)
    p.set_defaults(func=cmd_codebook)
    return parser


# Command line flag -> config option
FLAG_OPTIONS = [
    ("tau", "embed/tau"),
    ("sigma", "embed/sigma"),
    ("t_embed", "embed/t_embed"),
    ("margin", "embed/margin"),
    ("r_h", "embed/r_h"),
    ("backend", "embed/backend"),
    ("verify", "embed/verify"),
    ("key", "document/key"),
    ("char_size", "document/char_size"),
    ("codebook", "document/codebook"),
    ("corpus", "evaluation/corpus_dir"),
    ("ablation", "evaluation/ablation"),
]


def apply_flags(args, configs):
    """Override the config options by the given command line flags."""
    for flag, key in FLAG_OPTIONS:
        value = getattr(args, flag, None)
        if value is not None:
            configs.setn(key, value)
    if args.command == "extract" and args.length:
        configs.setn("document/message_length", args.length)
    if getattr(args, "attacks", None):
        configs.setn("evaluation/attacks",
                     [a.strip() for a in args.attacks.split(",")])
    if args.clobber:
        configs.setn("output/clobber", True)


def _fail(code, message):
    print(message, file=sys.stderr)
    return code


def main(argv=None, configs=None):
    """
    Run the command line interface.

    Parameters
    ----------
    argv : list[str], optional
        The arguments; default to ``sys.argv[1:]``.
    configs : `~strokemark.configs.ConfigManager`, optional
        Default to the shared ``CONFIGS``.

    Returns
    -------
    status : int
    """
    if configs is None:
        configs = CONFIGS
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    try:
        if args.config:
            configs.read_userconfig(args.config, reset=True)
        apply_flags(args, configs)
        configs.check_all()
    except (ConfigError, ValueError) as e:
        return _fail(EXIT_USAGE, "config error: %s" % e)

    loglevel = "DEBUG" if args.debug else args.loglevel
    setup_logging(dict_config=configs.logging, level=loglevel,
                  logfile=args.logfile)
    logger.info("COMMAND: strokemark %s" % " ".join(
        sys.argv[1:] if argv is None else argv))

    try:
        return args.func(args, configs)
    except NonEmbeddable as e:
        return _fail(EXIT_EMBED, "non-embeddable: %s" % e.reason)
    except EmbedInfeasible as e:
        return _fail(EXIT_EMBED, "infeasible: %s" % e.reason)
    except CapacityError as e:
        return _fail(EXIT_EMBED, "capacity: %s" % e)
    except ImageIOError as e:
        return _fail(EXIT_IO, "I/O error: %s" % e)
    except (ConfigError, ContractError, ValueError) as e:
        return _fail(EXIT_USAGE, "error: %s" % e)
    except OSError as e:
        return _fail(EXIT_IO, "I/O error: %s" % e)
