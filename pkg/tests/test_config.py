"""Tests for configuration loading."""

from __future__ import annotations

from pathlib import Path

import pytest

from gasket_resistance.config import load_config
from gasket_resistance.config.loader import get_config_path
from gasket_resistance.errors import ConfigError
from gasket_resistance.models.diffusion import MeasureRule
from gasket_resistance.models.lattice import CableMode


@pytest.fixture
def clean_env(tmp_path, monkeypatch):
    monkeypatch.setenv("GASKET_CONFIG", str(tmp_path / "absent.toml"))
    for key in ("GASKET_THREADS", "GASKET_SEED", "GASKET_OUTPUT_DIR"):
        monkeypatch.delenv(key, raising=False)
    return tmp_path


def test_defaults_without_file(clean_env):
    cfg = load_config(force_reload=True)
    assert cfg.run.seed == 0
    assert cfg.run.threads == 1
    assert cfg.generate.sizes == [64]
    assert cfg.exponents.kappa == 6.0
    assert cfg.verify.fixtures == 50
    assert cfg.tolerances.to_tolerances().assert_tol == 1e-9


def test_config_path_resolution(clean_env, monkeypatch):
    assert get_config_path("~/x.toml") == Path.home() / "x.toml"
    assert get_config_path() == clean_env / "absent.toml"
    monkeypatch.delenv("GASKET_CONFIG")
    assert get_config_path() == Path.home() / ".gasket-resistance" / "config.toml"


def test_toml_file(clean_env):
    path = clean_env / "gasket.toml"
    path.write_text(
        "[run]\nseed = 17\n\n"
        "[generate]\nsizes = [16, 32]\neps = [2.0, 4.0]\nmode = \"merged\"\n\n"
        "[walk]\nmu = \"degree\"\n"
    )
    cfg = load_config(force_reload=True, path=path)
    assert cfg.run.seed == 17
    assert cfg.generate.sizes == [16, 32]
    assert cfg.generate.mode is CableMode.MERGED
    assert cfg.walk.mu is MeasureRule.DEGREE


def test_environment_overrides(clean_env, monkeypatch):
    monkeypatch.setenv("GASKET_SEED", "99")
    monkeypatch.setenv("GASKET_THREADS", "3")
    monkeypatch.setenv("GASKET_OUTPUT_DIR", str(clean_env / "results"))
    cfg = load_config(force_reload=True)
    assert cfg.run.seed == 99
    assert cfg.run.threads == 3
    assert cfg.run.output_dir == clean_env / "results"


def test_flags_win_over_environment(clean_env, monkeypatch):
    monkeypatch.setenv("GASKET_SEED", "99")
    cfg = load_config(force_reload=True, overrides={"run": {"seed": 5, "threads": None}})
    assert cfg.run.seed == 5
    assert cfg.run.threads == 1


def test_cached_until_reload(clean_env):
    first = load_config(force_reload=True, overrides={"run": {"seed": 8}})
    assert load_config() is first
    assert load_config(force_reload=True).run.seed == 0


def test_unknown_key_rejected(clean_env):
    path = clean_env / "bad.toml"
    path.write_text("[walk]\nspeed = 2\n")
    with pytest.raises(ConfigError, match="walk.speed"):
        load_config(force_reload=True, path=path)


def test_invalid_value_rejected(clean_env):
    with pytest.raises(ConfigError):
        load_config(force_reload=True, overrides={"walk": {"replicas": 0}})


def test_scales_must_increase(clean_env):
    with pytest.raises(ConfigError):
        load_config(force_reload=True, overrides={"resist": {"scales": [8.0, 4.0]}})


def test_malformed_toml(clean_env):
    path = clean_env / "broken.toml"
    path.write_text("[run\nseed = 1\n")
    with pytest.raises(ConfigError):
        load_config(force_reload=True, path=path)


def test_explicit_missing_file(clean_env):
    with pytest.raises(ConfigError, match="not found"):
        load_config(force_reload=True, path=clean_env / "nope.toml")
