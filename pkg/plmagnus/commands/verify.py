"""
Run the invariant suites and report pass/fail per suite.
"""

import argparse

from plmagnus.commands import register_command
from plmagnus.commands.base import BaseCommand, UsageError
from plmagnus.utils.logger import logger
from plmagnus.utils.serialize import results_to_json, results_to_text, split_list, write_output
from plmagnus.verification import GROUPS, VerificationContext, run_suites


@register_command
class VerifyCommand(BaseCommand):
    """
    Command checking the algebraic and numeric invariants.
    """

    name = "verify"
    help = "Run invariant suites (exit 1 when any suite fails)"

    def _setup_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--only",
            help=f"Comma-separated suite groups to run ({', '.join(GROUPS)})",
        )
        parser.add_argument("--order", type=int, help="Truncation order N (default: from config)")
        self._add_output_arguments(parser, formats=("text", "json"))

    def handle(self, args: argparse.Namespace) -> int:
        """
        Handle command execution.

        Args:
            args: Command arguments

        Returns:
            0 when every selected suite passes, 1 otherwise
        """
        run_config = self.run_config(args)
        if run_config.format not in ("text", "json"):
            raise UsageError(f"verify writes text or json, not {run_config.format}")

        only = split_list(args.only) if args.only else None
        unknown = [group for group in only or [] if group not in GROUPS]
        if unknown:
            raise UsageError(f"Unknown suite group(s): {', '.join(unknown)}")

        results = run_suites(VerificationContext(run_config), only)
        failed = [r.name for r in results if not r.passed]

        if run_config.format == "json":
            write_output(results_to_json(results), run_config.out)
        else:
            write_output(results_to_text(results), run_config.out)

        if failed:
            logger.error(f"Failed suites: {', '.join(failed)}")
            return 1
        logger.info(f"All {len(results)} suites passed")
        return 0
