"""
Shared fixtures for the plmagnus test suite.
"""

import os

import pytest

from plmagnus.algebra.element import AlgebraMode
from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.utils import config
from plmagnus.utils.logger import setup_logger

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the config file, log file and working directory at a temporary directory."""
    monkeypatch.chdir(tmp_path)
    config_dir = tmp_path / "config"
    monkeypatch.setattr(config, "CONFIG_DIR", str(config_dir))
    monkeypatch.setattr(config, "CONFIG_FILE", str(config_dir / "config.json"))
    monkeypatch.setitem(config.DEFAULT_CONFIG, "log_file", str(config_dir / "plmagnus.log"))
    return config_dir


@pytest.fixture(autouse=True)
def reset_logger():
    """Drop handlers a test installed (CLI runs bind them to captured streams)."""
    yield
    setup_logger(stream=None)


@pytest.fixture
def postlie():
    return PostLieAlgebra(AlgebraMode.POSTLIE, order=5)


@pytest.fixture
def prelie():
    return PostLieAlgebra(AlgebraMode.PRELIE, order=5)


@pytest.fixture
def golden():
    """Read a golden file by name."""

    def read(name: str) -> str:
        with open(os.path.join(GOLDEN_DIR, name), "r", newline="") as f:
            return f.read()

    return read
