"""
Evaluate a single algebra operation on operands given on the command line.
"""

import argparse
from typing import Callable, Dict, List, Tuple

from plmagnus.algebra.element import DomainError, Element, ModeMismatchError
from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.algebra.exact import SizeLimitError
from plmagnus.algebra.trees import TreeParseError
from plmagnus.commands import register_command
from plmagnus.commands.base import BaseCommand, UsageError
from plmagnus.utils.logger import logger
from plmagnus.utils.serialize import element_to_json, element_to_text, parse_element, write_output


def _operations(algebra: PostLieAlgebra) -> Dict[str, Tuple[int, Callable[..., Element]]]:
    return {
        "concat": (2, algebra.concat_mul),
        "bracket": (2, algebra.hbracket),
        "post": (2, algebra.post_lie_prod),
        "gl": (2, algebra.gl_mul),
        "gbracket": (2, algebra.gbracket),
        "theta": (1, algebra.theta),
        "theta-partitions": (1, algebra.theta_via_partitions),
        "theta-inv": (1, algebra.theta_inverse),
        "chi": (1, algebra.post_lie_magnus),
        "phi": (1, algebra.inverse_magnus),
        "exp": (1, algebra.exp_concat),
        "log": (1, algebra.log_concat),
        "exp-gl": (1, algebra.exp_gl),
        "log-gl": (1, algebra.log_gl),
        "upsilon": (2, algebra.upsilon),
        "star": (2, algebra.star_group),
        "bch-h": (2, algebra.bch_h),
        "bch-g": (2, algebra.bch_g),
    }


OPERATIONS = sorted(_operations(PostLieAlgebra()))


@register_command
class TableCommand(BaseCommand):
    """
    Command applying one engine operation to parsed operands.
    """

    name = "table"
    help = "Evaluate an algebra operation on tree-word operands"

    def _setup_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("op", choices=OPERATIONS, help="Operation to evaluate")
        parser.add_argument(
            "operands",
            nargs="+",
            help='Operands such as "[] [[]]" or "[[]] + -1/2*[] []"',
        )
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
            raise UsageError(f"table writes text or json, not {run_config.format}")
        try:
            algebra = PostLieAlgebra.from_config(run_config)
        except SizeLimitError as e:
            raise UsageError(str(e))

        arity, operation = _operations(algebra)[args.op]
        if len(args.operands) != arity:
            raise UsageError(f"{args.op} takes {arity} operand(s), got {len(args.operands)}")

        operands = self._parse_operands(args.operands, algebra)
        try:
            result = operation(*operands)
        except (DomainError, ModeMismatchError, SizeLimitError) as e:
            raise UsageError(f"{args.op}: {e}")
        logger.info(f"{args.op} produced {len(result)} terms")

        if run_config.format == "json":
            write_output(element_to_json(result, args.op), run_config.out)
        else:
            write_output(element_to_text(result), run_config.out)
        return 0

    @staticmethod
    def _parse_operands(texts: List[str], algebra: PostLieAlgebra) -> List[Element]:
        operands = []
        for index, text in enumerate(texts, start=1):
            try:
                operands.append(parse_element(text, algebra.mode, algebra.order))
            except TreeParseError as e:
                raise UsageError(f"operand {index}: {e}")
        return operands
