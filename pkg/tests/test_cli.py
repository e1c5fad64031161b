# Copyright (c) 2026 strokemark developers
# MIT License

import json
import os

import numpy as np
import pytest

from strokemark.cli import (EXIT_EMBED, EXIT_IO, EXIT_OK, EXIT_USAGE, main,
                            parse_attack)
from strokemark.errors import ConfigError
from strokemark.glyphs import render_glyph, render_page
from strokemark.raster import load_image, save_image

from conftest import blank


KEY = "000102030405060708090a0b0c0d0e0f"


@pytest.fixture
def cli_configs(configs):
    # No console handler: the captured streams change between tests
    configs.setn("logging/stream", "")
    return configs


@pytest.fixture
def glyph_file(tmp_path):
    def _make(letter, size=192):
        path = str(tmp_path / ("%s.png" % letter))
        save_image(path, render_glyph(letter, size=size))
        return path
    return _make


def test_loop_glyph(tmp_path, cli_configs, glyph_file, capsys):
    code = main(["embed-glyph", "--in", glyph_file("o"), "--bit", "1",
                 "--out", str(tmp_path / "out.png")], cli_configs)
    assert code == EXIT_EMBED
    assert "non-embeddable: no endpoints" in capsys.readouterr().err
    assert not os.path.exists(str(tmp_path / "out.png"))


def test_usage_error(cli_configs):
    assert main(["embed-glyph"], cli_configs) == EXIT_USAGE
    assert main(["embed-glyph", "--in", "a.png", "--bit", "2",
                 "--out", "b.png"], cli_configs) == EXIT_USAGE
    assert main([], cli_configs) == EXIT_USAGE


def test_missing_input(tmp_path, cli_configs, capsys):
    code = main(["embed-glyph", "--in", str(tmp_path / "nonexistent.png"),
                 "--bit", "0", "--out", str(tmp_path / "out.png")],
                cli_configs)
    assert code == EXIT_IO
    assert "I/O error" in capsys.readouterr().err


def test_config_error(tmp_path, cli_configs, glyph_file, capsys):
    code = main(["embed-glyph", "--in", glyph_file("n"), "--bit", "0",
                 "--out", str(tmp_path / "out.png"), "--margin", "12"],
                cli_configs)
    assert code == EXIT_USAGE
    assert "config error" in capsys.readouterr().err


def test_embed_and_extract_glyph(tmp_path, cli_configs, glyph_file, capsys):
    infile = glyph_file("n")
    for bit in (0, 1):
        outfile = str(tmp_path / ("n_%d.png" % bit))
        trace = str(tmp_path / ("trace_%d.json" % bit))
        code = main(["embed-glyph", "--in", infile, "--bit", str(bit),
                     "--out", outfile, "--trace-mpe", trace,
                     "--debug-dir", str(tmp_path / ("debug_%d" % bit))],
                    cli_configs)
        assert code == EXIT_OK
        with open(trace) as fp:
            assert "handle" in json.load(fp)
        assert os.path.exists(str(tmp_path / ("debug_%d" % bit) /
                                  "before_after.png"))
        capsys.readouterr()
        assert main(["extract", "--glyph", "--in", outfile],
                    cli_configs) == EXIT_OK
        assert capsys.readouterr().out.strip() == str(bit)


def test_embed_and_extract_doc(tmp_path, cli_configs, capsys):
    infile = str(tmp_path / "page.png")
    save_image(infile, render_page("nmru\nwyHN", size=128))
    outfile = str(tmp_path / "encoded.png")
    manifest = str(tmp_path / "manifest.json")
    code = main(["embed-doc", "--in", infile, "--message", "0b1011",
                 "--key", KEY, "--out", outfile, "--manifest", manifest],
                cli_configs)
    assert code == EXIT_OK
    assert "capacity=8 repetitions=2 length=4" in capsys.readouterr().out
    with open(manifest) as fp:
        assert json.load(fp)["capacity"] == 8
    report = str(tmp_path / "report.json")
    code = main(["extract", "--in", outfile, "--key", KEY, "--length", "4",
                 "--report", report], cli_configs)
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == "b"
    with open(report) as fp:
        assert json.load(fp)["message"] == [1, 0, 1, 1]


def test_eval_experiments(tmp_path, cli_configs):
    cli_configs.setn("evaluation/fonts", ["plain"])
    cli_configs.setn("evaluation/sizes", [192])
    cli_configs.setn("evaluation/letters", "nH")
    cli_configs.setn("evaluation/camera_angles", [0.0, 30.0])
    cli_configs.setn("evaluation/camera_distances", [1.0])
    report = str(tmp_path / "camera.json")
    code = main(["eval", "--experiment", "camera", "--report", report],
                cli_configs)
    assert code == EXIT_OK
    with open(report) as fp:
        data = json.load(fp)
    assert data["experiment"] == "camera"
    assert [row["angle"] for row in data["rows"]] == [0.0, 30.0]
    assert all(row["attempts"] == 4 for row in data["rows"])

    records = str(tmp_path / "records.csv")
    code = main(["eval", "--report", str(tmp_path / "eval.json"),
                 "--csv", records, "--attacks", "identity"], cli_configs)
    assert code == EXIT_OK
    summary = str(tmp_path / "summary.json")
    code = main(["eval", "--from-csv", records, "--report", summary],
                cli_configs)
    assert code == EXIT_OK
    with open(summary) as fp:
        rows = json.load(fp)["rows"]
    assert [row["attack"] for row in rows] == ["identity"]
    assert rows[0]["acc"] == 100


def test_attack(tmp_path, cli_configs, glyph_file):
    infile = glyph_file("n", size=64)
    outfile = str(tmp_path / "noisy.png")
    code = main(["attack", "--in", infile, "--spec",
                 "gaussian_noise:var=0", "--out", outfile], cli_configs)
    assert code == EXIT_OK
    assert np.array_equal(load_image(outfile), load_image(infile))
    code = main(["attack", "--in", infile, "--spec", "sharpen",
                 "--out", str(tmp_path / "x.png")], cli_configs)
    assert code == EXIT_USAGE


def test_extract_blank_page(tmp_path, cli_configs, capsys):
    infile = str(tmp_path / "blank.png")
    save_image(infile, blank(200, 300))
    report = str(tmp_path / "report.json")
    code = main(["extract", "--in", infile, "--length", "8",
                 "--report", report], cli_configs)
    assert code == EXIT_EMBED
    assert "capacity" in capsys.readouterr().err
    with open(report) as fp:
        assert json.load(fp)["capacity"] == 0


def test_codebook_inspect_missing(tmp_path, cli_configs):
    code = main(["codebook", "inspect", "--codebook",
                 str(tmp_path / "nonexistent")], cli_configs)
    assert code == EXIT_IO


def test_parse_attack():
    spec = parse_attack("gaussian_noise:var=0.05", {}, 3)
    assert spec.kind == "gaussian_noise"
    assert spec.params["var"] == 0.05
    assert spec.seed == 3
    spec = parse_attack("rescale:factor=1", {}, 0)
    assert spec.params["factor"] == 1
    with pytest.raises(ConfigError):
        parse_attack("gaussian_noise:var", {}, 0)
