import pytest

from fingertrace.config import CONFIG_ENV, RunConfig, config_from_mapping, format_config, load_config, parse_config
from fingertrace.skin import SkinBand


def test_defaults():
    c = RunConfig()
    assert c.band == SkinBand(0, 50, 0.23, 0.68, 0.35, 1.0)
    assert (c.smooth_kernel, c.smooth_cutoff, c.connectivity) == (3, 0.5, 8)
    assert (c.tip_threshold, c.min_cluster, c.min_separation, c.max_tips) == (235, 2, 8.0, 5)
    assert c.slope_threshold_factor == 0.15


def test_parse_flat_file():
    text = """
    # comment
    skin_h_hi = 40
    tip_threshold = 250   # trailing comment
    marker_color = 255, 0, 255
    connectivity=4
    """
    c = parse_config(text)
    assert c.band.h_hi == 40.0 and c.band.h_lo == 0.0
    assert c.tip_threshold == 250
    assert c.marker_color == (255, 0, 255)
    assert c.connectivity == 4


def test_unknown_key():
    with pytest.raises(KeyError):
        parse_config("bogus = 1")


def test_invalid_values():
    with pytest.raises(ValueError):
        parse_config("smooth_kernel = 4")
    with pytest.raises(ValueError):
        parse_config("tip_threshold = 0")
    with pytest.raises(ValueError):
        parse_config("just a line")


def test_format_round_trip():
    c = config_from_mapping({"skin_s_lo": "0.3", "max_tips": "3", "crop_color": "1,2,3"})
    assert parse_config(format_config(c)) == c


def test_env_fallback(tmp_path, monkeypatch):
    path = tmp_path / "run.cfg"
    path.write_text("max_tips = 2\n")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    assert load_config().max_tips == 2
    monkeypatch.delenv(CONFIG_ENV)
    assert load_config() == RunConfig()


def test_min_separation_scales():
    c = RunConfig()
    assert c.min_separation_for(640, 480) == pytest.approx(8.0)
    assert c.min_separation_for(320, 240) == pytest.approx(4.0)
