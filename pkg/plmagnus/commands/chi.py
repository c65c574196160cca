"""
Print the Magnus expansion chi(x) of the generator.
"""

import argparse

from plmagnus.algebra.element import AlgebraMode
from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.algebra.exact import SizeLimitError
from plmagnus.commands import register_command
from plmagnus.commands.base import BaseCommand, UsageError
from plmagnus.utils.logger import logger
from plmagnus.utils.serialize import element_to_json, element_to_text, write_output


@register_command
class ChiCommand(BaseCommand):
    """
    Command printing chi(x) = log_*(exp(x)) for the single-vertex tree x.

    In prelie mode the pre-Lie Magnus fixed point is printed instead.
    """

    name = "chi"
    help = "Print the post-Lie (or pre-Lie) Magnus expansion of the generator"

    def _setup_arguments(self, parser: argparse.ArgumentParser) -> None:
        self._add_algebra_arguments(parser)
        self._add_output_arguments(parser, formats=("text", "json"))

    def handle(self, args: argparse.Namespace) -> int:
        """
        Handle command execution.

        Args:
            args: Command arguments

        Returns:
            Exit code
        """
        run_config = self.run_config(args)
        if run_config.format not in ("text", "json"):
            raise UsageError(f"chi writes text or json, not {run_config.format}")

        try:
            algebra = PostLieAlgebra.from_config(run_config)
        except SizeLimitError as e:
            raise UsageError(str(e))

        x = algebra.generator()
        with logger.timed(f"chi to order {algebra.order}"):
            if algebra.mode is AlgebraMode.PRELIE:
                chi = algebra.prelie_magnus(x)
            else:
                chi = algebra.post_lie_magnus(x)
        logger.info(f"chi to order {algebra.order} has {len(chi)} terms")

        if run_config.format == "json":
            text = element_to_json(chi, "chi")
        else:
            text = element_to_text(chi)
        write_output(text, run_config.out)
        return 0
