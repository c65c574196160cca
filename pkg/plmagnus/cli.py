#!/usr/bin/env python3
"""
Command line interface for plmagnus.
"""

import argparse
import logging
import sys
from typing import List, Optional

from plmagnus import __version__
from plmagnus.algebra.trees import TreeParseError
from plmagnus.commands import UsageError, get_command_classes
from plmagnus.utils.config import ConfigError, load_config
from plmagnus.utils.logger import TRACE_LEVEL, logger, setup_logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def setup_parser() -> argparse.ArgumentParser:
    """
    Set up command line argument parser.

    Returns:
        Configured argument parser
    """
    parser = argparse.ArgumentParser(
        prog="plmagnus",
        description="Exact post-Lie Magnus expansions and numeric Magnus integrators.",
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"plmagnus {__version__}"
    )

    parser.add_argument(
        "--verbose", "-v",
        action="count",
        default=0,
        help="Increase verbosity (can be used multiple times)"
    )

    parser.add_argument(
        "--quiet", "-q",
        action="store_true",
        help="Only log errors"
    )

    parser.add_argument(
        "--log-file",
        help="Log file path (default: from config)"
    )

    parser.add_argument(
        "--config",
        help="Configuration file (default: ~/.config/plmagnus/config.json)"
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    commands = get_command_classes()
    for name, command_class in sorted(commands.items()):
        command_instance = command_class()
        command_instance.setup_parser(subparsers)

    return parser


def configure_logging(args: argparse.Namespace, config: dict) -> None:
    """
    Configure logging based on command line arguments.

    Args:
        args: Command line arguments
        config: Loaded configuration
    """
    log_levels = {
        0: logging.WARNING,  # Default
        1: logging.INFO,     # -v
        2: logging.DEBUG,    # -vv
        3: TRACE_LEVEL,      # -vvv
    }

    verbosity = min(args.verbose, max(log_levels.keys()))
    log_level = log_levels[verbosity]

    if args.quiet:
        log_level = logging.ERROR

    log_file = args.log_file or config.get("log_file")

    setup_logger(level=log_level, log_file=log_file, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the application.

    Args:
        argv: Command line arguments (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 success, 1 verification or unexpected failure, 2 usage error
    """
    try:
        parser = setup_parser()
        try:
            args = parser.parse_args(sys.argv[1:] if argv is None else argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        config = load_config(args.config)
        configure_logging(args, config)

        if not args.command:
            parser.print_help()
            return EXIT_USAGE

        try:
            return_code = args.func(args)
            return return_code if return_code is not None else EXIT_OK
        except (UsageError, TreeParseError, ConfigError) as e:
            logger.error(f"{args.command}: {e}")
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as e:
            logger.error(f"{args.command}: {e}")
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_FAILURE
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return 130
    except Exception as e:
        print(f"An unexpected error occurred: {e}", file=sys.stderr)
        logger.exception("Unexpected error in main")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
