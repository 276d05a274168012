"""Configuration management for the gasket command."""

from gasket_resistance.config.loader import get_config, get_config_path, load_config
from gasket_resistance.config.schema import (
    CableSettings,
    Config,
    ExponentsConfig,
    GenerateConfig,
    ResistConfig,
    RunConfig,
    ToleranceConfig,
    VerifyConfig,
    WalkConfig,
)

__all__ = [
    "CableSettings",
    "Config",
    "ExponentsConfig",
    "GenerateConfig",
    "ResistConfig",
    "RunConfig",
    "ToleranceConfig",
    "VerifyConfig",
    "WalkConfig",
    "get_config",
    "get_config_path",
    "load_config",
]
