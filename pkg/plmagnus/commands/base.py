"""
Base command class for plmagnus commands.
"""

import argparse
from abc import ABC, abstractmethod
from typing import Sequence

from plmagnus.utils.config import FORMATS, MODES, ConfigError, RunConfig, load_config


class UsageError(Exception):
    """Raised by commands for invalid input; the CLI maps it to exit code 2."""


class BaseCommand(ABC):
    """
    Base class for all plmagnus commands.
    """

    name = "base"
    help = "Base command"

    def __init__(self) -> None:
        self.parser = None

    def setup_parser(self, subparsers) -> None:
        """
        Set up command parser.

        Args:
            subparsers: Subparsers object to add command to
        """
        self.parser = subparsers.add_parser(self.name, help=self.help)
        self.parser.set_defaults(func=self.handle)
        self._setup_arguments(self.parser)

    @staticmethod
    def _add_output_arguments(parser: argparse.ArgumentParser, formats: Sequence[str] = FORMATS) -> None:
        parser.add_argument("--format", choices=list(formats), help="Output format (default: from config)")
        parser.add_argument("--out", help="Write output to this file instead of stdout")

    @staticmethod
    def _add_algebra_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--order", type=int, help="Truncation order N (default: from config)")
        parser.add_argument("--mode", choices=list(MODES), help="Algebra mode (default: from config)")

    def run_config(self, args: argparse.Namespace) -> RunConfig:
        """
        Effective settings for this run.

        Raises:
            UsageError: If the merged configuration is invalid
        """
        try:
            return RunConfig.from_sources(load_config(getattr(args, "config", None)), args)
        except ConfigError as e:
            raise UsageError(str(e))

    @abstractmethod
    def _setup_arguments(self, parser: argparse.ArgumentParser) -> None:
        """
        Setup command arguments. Must be implemented by subclasses.

        Args:
            parser: ArgumentParser to configure
        """

    @abstractmethod
    def handle(self, args: argparse.Namespace) -> int:
        """
        Handle command execution. Must be implemented by subclasses.

        Args:
            args: Command arguments

        Returns:
            Exit code (0 for success, 1 for failed verification, 2 for usage errors)
        """
