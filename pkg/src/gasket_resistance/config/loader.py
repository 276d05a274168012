"""Configuration loading from files, environment variables and flags."""

from __future__ import annotations

import logging
import os
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from gasket_resistance.config.schema import Config
from gasket_resistance.errors import ConfigError

# Use tomllib in Python 3.11+, tomli for older versions
if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

# Environment variables overriding [run] keys
ENV_OVERRIDES = {
    "GASKET_THREADS": "threads",
    "GASKET_SEED": "seed",
    "GASKET_OUTPUT_DIR": "output_dir",
}

# Global config instance
_config: Config | None = None


def get_config_path(explicit: Path | str | None = None) -> Path:
    """Path of the configuration file: flag, then $GASKET_CONFIG, then the home default."""
    if explicit is not None:
        return Path(explicit).expanduser()
    env_path = os.environ.get("GASKET_CONFIG")
    if env_path:
        return Path(env_path).expanduser()
    return Path.home() / ".gasket-resistance" / "config.toml"


def load_config_from_file(config_path: Path, required: bool = False) -> dict[str, Any]:
    """Load a TOML file; a missing optional file yields an empty mapping."""
    if not config_path.exists():
        if required:
            raise ConfigError(f"configuration file not found: {config_path}")
        return {}
    try:
        with open(config_path, "rb") as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{config_path}: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"{config_path}: {exc.strerror}") from exc


def apply_env_overrides(config_dict: dict[str, Any]) -> dict[str, Any]:
    """Apply GASKET_* environment overrides to the [run] section."""
    run = dict(config_dict.get("run", {}))
    for env_key, field in ENV_OVERRIDES.items():
        if env_key in os.environ:
            run[field] = os.environ[env_key]
    if run:
        config_dict["run"] = run
    return config_dict


def apply_overrides(config_dict: dict[str, Any], overrides: Mapping[str, Mapping[str, Any]]) -> dict[str, Any]:
    """Merge per-section overrides (command-line flags); None values are ignored."""
    for section, values in overrides.items():
        merged = dict(config_dict.get(section, {}))
        merged.update({key: value for key, value in values.items() if value is not None})
        config_dict[section] = merged
    return config_dict


def build_config(config_dict: Mapping[str, Any]) -> Config:
    try:
        return Config.model_validate(dict(config_dict))
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"invalid configuration at {location}: {first['msg']}") from exc


def load_config(
    force_reload: bool = False,
    path: Path | str | None = None,
    overrides: Mapping[str, Mapping[str, Any]] | None = None,
) -> Config:
    """Load and return the configuration.

    Args:
        force_reload: If True, reload config even if already loaded.
        path: Explicit configuration file (must exist).
        overrides: Per-section values from the command line, applied last.

    Returns:
        The loaded configuration.

    Raises:
        ConfigError: If the file cannot be parsed or a value is invalid.
    """
    global _config

    if _config is not None and not force_reload:
        return _config

    config_path = get_config_path(path)
    config_dict = load_config_from_file(config_path, required=path is not None)
    config_dict = apply_env_overrides(config_dict)
    if overrides:
        config_dict = apply_overrides(config_dict, overrides)
    _config = build_config(config_dict)
    logger.debug("configuration loaded from %s", config_path)
    return _config


def get_config() -> Config:
    """Get the current configuration, loading if necessary."""
    return load_config()
