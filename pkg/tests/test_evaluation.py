# Copyright (c) 2026 strokemark developers
# MIT License

import json

import pytest

from strokemark.evaluation import (EMBED_NONEMBEDDABLE, DocumentEvaluator,
                                   Evaluator, compose_page, load_corpus_dir,
                                   summarize_csv, word_index)
from strokemark.glyphs import CARRIERS, render_glyph
from strokemark.raster import save_image
from strokemark.utils.io import csv_to_dataframe


@pytest.fixture
def evaluator(configs):
    configs.setn("evaluation/attacks", ["identity", "gaussian_blur"])
    configs.setn("evaluation/fonts", ["plain"])
    configs.setn("evaluation/sizes", [192])
    configs.setn("evaluation/letters", "nro")
    ev = Evaluator(configs)
    ev.run()
    return ev


def test_records(evaluator):
    df = evaluator.records
    # 3 glyphs x 2 bits x 2 attacks
    assert len(df) == 12
    assert set(df["attack"]) == {"identity", "gaussian_blur"}
    loops = df[df["letter"] == "o"]
    assert (loops["status"] == EMBED_NONEMBEDDABLE).all()
    assert not loops["correct"].any()


def test_identity_accuracy(evaluator):
    groups, attacks = evaluator.summarize()
    row = attacks[attacks["attack"] == "identity"].iloc[0]
    # The loop glyph is excluded: it has no handle
    assert row["attempts"] == 4
    assert row["embedded"] == 4
    assert row["acc"] == 100
    assert row["acc_all"] == 100
    assert set(groups["font"]) == {"plain"}


def test_report(tmp_path, evaluator):
    report = evaluator.report()
    assert report["counts"]["glyphs"] == 3
    assert report["counts"]["nonembeddable"] == 2
    assert report["counts"]["embedded"] == 4
    assert report["counts"]["unchanged"] == 2
    assert [a["name"] for a in report["attacks"]] == ["identity",
                                                      "gaussian_blur"]
    assert report["ablation"] == "full"
    assert 0.99 <= report["quality"]["ssim"] <= 1
    outfile = str(tmp_path / "report.json")
    csvfile = str(tmp_path / "records.csv")
    evaluator.write_report(outfile, csvfile)
    with open(outfile) as fp:
        data = json.load(fp)
    assert data["counts"] == dict(report["counts"])
    df, comments = csv_to_dataframe(csvfile)
    assert len(df) == len(evaluator.records)
    assert "letter" in df.columns
    assert comments
    summary = summarize_csv(csvfile)
    assert list(summary["attack"]) == ["gaussian_blur", "identity"]
    assert list(summary["attempts"]) == [4, 4]


def test_report_before_run(configs):
    with pytest.raises(RuntimeError):
        Evaluator(configs).report()


def test_load_corpus_dir(tmp_path):
    save_image(str(tmp_path / "a.png"), render_glyph("n", size=48))
    save_image(str(tmp_path / "b.png"), render_glyph("r", size=64))
    (tmp_path / "c.png").write_bytes(b"garbage")
    items, skipped = load_corpus_dir(str(tmp_path))
    assert [it["name"] for it in items] == ["a", "b"]
    assert [it["size"] for it in items] == [48, 64]
    assert [s["name"] for s in skipped] == ["c"]


def test_full_corpus_identity(configs):
    configs.setn("evaluation/letters", CARRIERS)
    ev = Evaluator(configs)
    ev.run()
    report = ev.report()
    assert report["counts"]["glyphs"] >= 60
    assert report["counts"]["infeasible"] == 0
    assert report["acc"][0]["acc"] == 100
    assert report["quality"]["psnr"] >= 30
    assert report["quality"]["ssim"] >= 0.99


@pytest.fixture
def small_configs(configs):
    configs.setn("evaluation/fonts", ["plain"])
    configs.setn("evaluation/sizes", [192])
    configs.setn("evaluation/letters", "n")
    return configs


def test_sweep_camera(small_configs):
    table = Evaluator(small_configs).sweep_camera([0.0, 45.0], [1.0])
    assert list(table["angle"]) == [0.0, 45.0]
    assert list(table["distance"]) == [1.0, 1.0]
    assert list(table["attempts"]) == [2, 2]
    assert table["acc"].iloc[0] == 100


def test_sweep_distance(small_configs):
    table = Evaluator(small_configs).sweep_distance([5.0, 30.0])
    assert list(table["fixed_distance"]) == [5.0, 30.0]
    short, far = table.iloc[0], table.iloc[1]
    # 5 pixels at 512 do not cross the threshold
    assert short["acc"] == 50
    assert far["acc"] == 100
    assert far["psnr"] < short["psnr"]


def test_compose_page():
    text = compose_page(["ab", "c", "def"], 2)
    assert text == "ab c\ndef"
    assert word_index(text) == [0, 0, 1, 2, 2, 2]
    with pytest.raises(ValueError):
        compose_page(["ab"], 0)


def test_recovery_trials(configs):
    """
    A 32-bit message over the 20-word page: recovered exactly as read,
    and at >= 99% bit accuracy with 10% of the reads flipped.
    """
    table = DocumentEvaluator(configs).recovery_trials(trials=100)
    assert len(table) == 100
    assert (table["carriers"] >= 224).all()
    assert table["clean"].all()
    assert table["flipped"].sum() > 0
    assert table["accuracy"].mean() >= 99


def test_partial_interception(configs):
    ev = DocumentEvaluator(configs)
    table = ev.partial_interception(lengths=[32], word_counts=[2, 5],
                                    trials=2)
    two, five = table.iloc[0], table.iloc[1]
    # Two words hold fewer carriers than message bits
    assert two["success"] == 0
    assert two["accuracy"] < 100
    assert five["success"] == 100
    with pytest.raises(ValueError):
        ev.partial_interception(word_counts=[21], trials=1)
