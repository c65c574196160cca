"""
Configuration handling for plmagnus.
"""

import argparse
import json
import os
from dataclasses import dataclass, fields
from typing import Any, Dict, Optional

from plmagnus.utils.logger import logger

# Configuration paths - made as variables for easier testing
CONFIG_DIR = os.path.expanduser("~/.config/plmagnus")
CONFIG_FILE = os.path.join(CONFIG_DIR, "config.json")

MODES = ("postlie", "prelie")
FORMATS = ("text", "json", "csv")

# Default configuration
DEFAULT_CONFIG = {
    "mode": "postlie",  # postlie or prelie
    "truncation_order": 6,
    "max_order": 9,
    "partition_cap": 10,
    "permutation_cap": 8,
    "tree_cap": 9,
    "quadrature_nodes": 4,
    "quadrature_panels": 64,
    "oracle_steps": 2048,
    "format": "text",  # text, json or csv
    "log_file": os.path.join(CONFIG_DIR, "plmagnus.log"),
}


class ConfigError(ValueError):
    """Raised when a configuration value is out of range or malformed."""


def ensure_config_dir(config_file: Optional[str] = None) -> None:
    """
    Ensure the directory holding the configuration file exists.

    Args:
        config_file: Config file path (defaults to CONFIG_FILE)
    """
    directory = os.path.dirname(config_file or CONFIG_FILE)
    if directory:
        os.makedirs(directory, exist_ok=True)


def load_config(config_file: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from file, creating default if it doesn't exist.

    Args:
        config_file: Explicit config path (the global --config flag)

    Returns:
        Dict containing configuration
    """
    path = config_file or CONFIG_FILE

    if not os.path.exists(path):
        if config_file:
            raise ConfigError(f"Config file not found: {path}")
        logger.info(f"Config file not found. Creating default at {path}")
        save_config(DEFAULT_CONFIG, path)
        return DEFAULT_CONFIG.copy()

    try:
        with open(path, "r") as f:
            config = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to load config: {e}")
        logger.info("Using default configuration")
        return DEFAULT_CONFIG.copy()

    if not isinstance(config, dict):
        raise ConfigError(f"Config file {path} must hold a flat JSON object")

    for key, value in DEFAULT_CONFIG.items():
        config.setdefault(key, value)

    return config


def save_config(config: Dict[str, Any], config_file: Optional[str] = None) -> bool:
    """
    Save configuration to file.

    Args:
        config: Configuration dictionary to save
        config_file: Target path (defaults to CONFIG_FILE)

    Returns:
        True if successful, False otherwise
    """
    path = config_file or CONFIG_FILE

    try:
        ensure_config_dir(path)
        with open(path, "w") as f:
            json.dump(config, f, indent=4, sort_keys=True)
        return True
    except OSError as e:
        logger.error(f"Failed to save config: {e}")
        return False


@dataclass
class RunConfig:
    """Effective settings of one command run: config file values overridden by flags."""

    mode: str = "postlie"
    truncation_order: int = 6
    max_order: int = 9
    partition_cap: int = 10
    permutation_cap: int = 8
    tree_cap: int = 9
    quadrature_nodes: int = 4
    quadrature_panels: int = 64
    oracle_steps: int = 2048
    format: str = "text"
    out: Optional[str] = None

    @classmethod
    def from_sources(
        cls,
        config: Dict[str, Any],
        args: Optional[argparse.Namespace] = None,
    ) -> "RunConfig":
        """
        Merge a loaded config dict with parsed command-line flags.

        Flags named like a field (``--order`` maps to ``truncation_order``)
        win over the config file when they were given.

        Args:
            config: Configuration dictionary
            args: Parsed arguments, or None

        Returns:
            Validated RunConfig

        Raises:
            ConfigError: If a value is malformed or out of range
        """
        values: Dict[str, Any] = {}
        for field in fields(cls):
            if field.name in config:
                values[field.name] = config[field.name]

        if args is not None:
            overrides = {
                "mode": getattr(args, "mode", None),
                "truncation_order": getattr(args, "order", None),
                "format": getattr(args, "format", None),
                "out": getattr(args, "out", None),
            }
            values.update({k: v for k, v in overrides.items() if v is not None})

        try:
            run_config = cls(**values)
        except TypeError as e:
            raise ConfigError(f"Invalid configuration: {e}")
        run_config.validate()
        return run_config

    def validate(self) -> None:
        """
        Check ranges and enumerations.

        Raises:
            ConfigError: On the first invalid value
        """
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")

        for name in (
            "truncation_order", "max_order", "partition_cap", "permutation_cap",
            "tree_cap", "quadrature_nodes", "quadrature_panels", "oracle_steps",
        ):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")

        if self.truncation_order > self.max_order:
            raise ConfigError(
                f"truncation_order {self.truncation_order} exceeds max_order {self.max_order}"
            )
