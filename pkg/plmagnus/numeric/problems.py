"""
Named test problems for the numeric integrators.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from plmagnus.numeric.functions import MatrixFunction
from plmagnus.numeric.magnus import matrix_exp

E12 = np.array([[0.0, 1.0], [0.0, 0.0]])
E21 = np.array([[0.0, 0.0], [1.0, 0.0]])
COMMUTING_BASE = np.array([[0.5, 1.0], [-1.0, 0.3]])
SKEW_SEED = 7


class ProblemSpecError(ValueError):
    """Raised for unknown problem names and malformed coefficient specs."""


@dataclass
class TestProblem:
    """A coefficient function together with its closed-form solution when one exists."""

    __test__ = False  # not a pytest class

    name: str
    A: MatrixFunction
    description: str
    exact: Optional[Callable[[float], np.ndarray]] = None


def xty_problem(T: float = 1.0) -> TestProblem:
    """A(t) = X + tY with X = E12, Y = E21; Omega_2(t) = -t^3/12 [X, Y]."""
    return TestProblem(
        name="xty",
        A=MatrixFunction.polynomial([E12, E21], T),
        description="A(t) = E12 + t E21",
    )


def commuting_problem(T: float = 1.0) -> TestProblem:
    """A(t) = (1 + cos t) M0, so Y(t) = exp((t + sin t) M0)."""
    base = COMMUTING_BASE
    return TestProblem(
        name="commuting",
        A=MatrixFunction(lambda t: (1.0 + np.cos(t)) * base, 2, T),
        description="A(t) = (1 + cos t) M0",
        exact=lambda t: matrix_exp((t + np.sin(t)) * base),
    )


def skew_problem(T: float = 1.0, seed: int = SKEW_SEED) -> TestProblem:
    """Random skew-symmetric quadratic polynomial in 3x3; solutions stay orthogonal."""
    rng = np.random.default_rng(seed)
    coefficients = []
    for _ in range(3):
        M = rng.uniform(-1.0, 1.0, size=(3, 3))
        coefficients.append((M - M.T) / 2.0)
    return TestProblem(
        name="skew",
        A=MatrixFunction.polynomial(coefficients, T),
        description=f"random skew-symmetric quadratic, seed {seed}",
    )


PROBLEMS: Dict[str, Callable[[float], TestProblem]] = {
    "xty": xty_problem,
    "commuting": commuting_problem,
    "skew": skew_problem,
}


def parse_polynomial_spec(spec: str) -> List[np.ndarray]:
    """
    Parse ``C0|C1|...`` with matrix rows separated by ``;`` and entries by ``,``.

    Raises:
        ProblemSpecError: On ragged, non-square or non-numeric input
    """
    coefficients = []
    for chunk in spec.split("|"):
        try:
            rows = [[float(v) for v in row.split(",")] for row in chunk.split(";")]
        except ValueError as e:
            raise ProblemSpecError(f"Malformed coefficient matrix {chunk!r}: {e}")
        if any(len(row) != len(rows) for row in rows):
            raise ProblemSpecError(f"Coefficient matrix {chunk!r} is not square")
        coefficients.append(np.array(rows))
    if len({c.shape for c in coefficients}) != 1:
        raise ProblemSpecError("Coefficient matrices have different sizes")
    if not all(np.all(np.isfinite(c)) for c in coefficients):
        raise ProblemSpecError("Coefficient matrices must be finite")
    return coefficients


def get_problem(spec: str, T: float = 1.0) -> TestProblem:
    """
    Resolve a problem name or a ``poly:`` coefficient spec.

    Raises:
        ProblemSpecError: If the name is unknown or the spec malformed
    """
    if spec.startswith("poly:"):
        coefficients = parse_polynomial_spec(spec[len("poly:"):])
        return TestProblem(
            name=spec,
            A=MatrixFunction.polynomial(coefficients, T),
            description="polynomial coefficients from the command line",
        )
    if spec not in PROBLEMS:
        raise ProblemSpecError(
            f"Unknown problem {spec!r}; choose from {', '.join(sorted(PROBLEMS))} or poly:..."
        )
    return PROBLEMS[spec](T)
