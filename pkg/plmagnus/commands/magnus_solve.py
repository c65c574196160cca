"""
Convergence study of truncated Magnus integrators on a test problem.
"""

import argparse

from plmagnus.commands import register_command
from plmagnus.commands.base import BaseCommand, UsageError
from plmagnus.numeric.convergence import DEFAULT_STEPS, convergence_study
from plmagnus.numeric.magnus import NumericError
from plmagnus.numeric.problems import ProblemSpecError, get_problem
from plmagnus.numeric.quadrature import QuadratureError
from plmagnus.utils.logger import logger
from plmagnus.utils.serialize import report_to_csv, report_to_json, split_list, write_output


def default_prefix(report) -> str:
    """``xty_k3``; ``poly:`` specs collapse to ``poly``."""
    return f"{report.problem.split(':')[0]}_k{report.k}"


@register_command
class MagnusSolveCommand(BaseCommand):
    """
    Command propagating Y' = A(t) Y with exp(Omega_1 + ... + Omega_k) per step.
    """

    name = "magnus-solve"
    help = "Measure the convergence order of the k-term Magnus integrator"

    def _setup_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--problem",
            default="xty",
            help="Named problem (xty, commuting, skew) or poly:C0|C1|... (rows ';', entries ',')",
        )
        parser.add_argument("--k", type=int, default=3, help="Number of Magnus terms, 1..3")
        parser.add_argument(
            "--steps",
            default=",".join(str(h) for h in DEFAULT_STEPS),
            help="Comma-separated step sizes",
        )
        parser.add_argument("--horizon", type=float, default=1.0, help="Final time T")
        parser.add_argument("--format", choices=["text", "json", "csv"], help="Format of stdout output")
        parser.add_argument(
            "--out",
            help="Path prefix for PREFIX.csv and PREFIX.json (default: <problem>_k<k> in the working directory)",
        )

    def handle(self, args: argparse.Namespace) -> int:
        """
        Handle command execution.

        Args:
            args: Command arguments

        Returns:
            Exit code
        """
        run_config = self.run_config(args)
        try:
            steps = [float(h) for h in split_list(args.steps)]
        except ValueError:
            raise UsageError(f"Malformed step list {args.steps!r}")

        try:
            problem = get_problem(args.problem, args.horizon)
            report = convergence_study(
                problem,
                args.k,
                steps=steps,
                horizon=args.horizon,
                oracle_steps=run_config.oracle_steps,
            )
        except (ProblemSpecError, NumericError, QuadratureError) as e:
            raise UsageError(str(e))

        prefix = run_config.out or default_prefix(report)
        write_output(report_to_csv(report), prefix + ".csv")
        write_output(report_to_json(report), prefix + ".json")

        if run_config.format == "json":
            print(report_to_json(report), end="")
        elif run_config.format == "csv":
            print(report_to_csv(report), end="")
        else:
            self._print_summary(report)
        logger.info(f"{report.problem}: fitted slope {report.slope}")
        return 0

    @staticmethod
    def _print_summary(report) -> None:
        print(f"problem: {report.problem} ({report.description})")
        print(f"terms: k={report.k}  horizon: {report.horizon}  oracle: {report.oracle}")
        if report.oracle_error:
            print(f"oracle error estimate: {report.oracle_error:.3e}")
        for h, error in zip(report.steps, report.errors):
            print(f"  h={h:<10g} error={error:.6e}")
        if report.exact:
            print("fitted slope: exact (errors at rounding level)")
        elif report.slope is None:
            print("fitted slope: undefined")
        else:
            print(f"fitted slope: {report.slope:.4f}")
