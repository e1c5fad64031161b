# Copyright (c) 2026 strokemark developers
# MIT License

import pytest

from strokemark.configs import ConfigManager
from strokemark.configs.checkers import check_configs
from strokemark.errors import ConfigError
from strokemark.params import EmbedParams


def _write(tmp_path, text, name="strokemark.conf"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_defaults(configs):
    assert configs.getn("embed/tau") == 80
    assert configs.getn("embed/sigma") == 10
    assert configs.getn("embed/t_embed") == 10
    assert configs.getn("embed/margin") == 5
    assert configs.getn("embed/r_h") == 5
    assert configs.getn("evaluation/attacks") == ["identity"]
    assert check_configs(configs) == (True, {})
    assert configs.check_all() == (True, {})


def test_read_userconfig(tmp_path, configs):
    path = _write(tmp_path, "[embed]\ntau = 60\n\n[document]\n"
                  "codebook = cache/book\n")
    configs.read_userconfig(path)
    assert configs.getn("embed/tau") == 60
    assert configs.getn("embed/sigma") == 10
    assert configs.get_path("document/codebook") == \
        str(tmp_path / "cache" / "book")
    with pytest.raises(ConfigError):
        configs.read_userconfig(path)
    configs.read_userconfig(path, reset=True)


def test_unknown_option(tmp_path, configs):
    path = _write(tmp_path, "[embed]\ntaux = 60\n")
    with pytest.raises(ConfigError, match="taux"):
        configs.read_userconfig(path)


def test_out_of_range(tmp_path, configs):
    path = _write(tmp_path, "[embed]\ntau = -1\n")
    with pytest.raises(ConfigError):
        configs.read_userconfig(path)


def test_missing_file(tmp_path, configs):
    with pytest.raises(ConfigError):
        configs.read_userconfig(str(tmp_path / "nonexistent.conf"))


def test_setn(configs):
    configs.setn("embed/tau", 40)
    assert configs["embed/tau"] == 40
    with pytest.raises(KeyError):
        configs.setn("embed/nonexistent", 1)
    with pytest.raises(ConfigError):
        configs.setn("embed/margin", 0)
    with pytest.raises(ConfigError):
        configs.setn("evaluation/ablation", "half")


@pytest.mark.parametrize("key, value", [
    ("embed/margin", 10),
    ("document/key", "abcd"),
    ("channel/gaussian_blur/kernel", 4),
    ("evaluation/attacks", ["identity", "sharpen"]),
    ("evaluation/corpus_dir", "/nonexistent/corpus"),
])
def test_checkers(configs, key, value):
    configs.setn(key, value)
    valid, errors = check_configs(configs, raise_exception=False)
    assert not valid
    assert key in errors or "embed/t_embed" in errors
    with pytest.raises(ConfigError):
        check_configs(configs)
    with pytest.raises(ConfigError):
        configs.check_all()


def test_attack_presets(configs):
    presets = configs.attack_presets
    assert presets["gaussian_blur"] == {"kernel": 3}
    assert presets["print_camera"]["angle"] == 20.0


def test_params_from_configs(configs):
    configs.setn("embed/tau", 160)
    params = EmbedParams.from_configs(configs, 256)
    assert params.tau == 80
    assert params.t_embed == 5
    assert params.margin == 3
    configs.setn("embed/auto_scale", False)
    params = EmbedParams.from_configs(configs, 256)
    assert params.tau == 160 and params.t_embed == 10


def test_scaled_minimums():
    params = EmbedParams.scaled(16)
    assert (params.tau, params.sigma, params.t_embed, params.margin,
            params.r_h) == (4, 2, 2, 1, 3)
    assert params.spur_length == 3
    assert params.min_area == 4


def test_save(tmp_path, configs):
    outfile = str(tmp_path / "saved.conf")
    configs.setn("embed/tau", 33)
    configs.save(outfile)
    loaded = ConfigManager(outfile)
    assert loaded.getn("embed/tau") == 33
    with pytest.raises(OSError):
        configs.save(outfile)
