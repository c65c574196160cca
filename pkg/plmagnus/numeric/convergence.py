"""
Convergence studies of truncated Magnus integrators against a reference solution.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from plmagnus.numeric.magnus import (
    MAX_OMEGA_TERMS,
    NumericError,
    matrix_exp,
    omega_terms,
    richardson_reference,
)
from plmagnus.numeric.problems import TestProblem
from plmagnus.numeric.quadrature import QuadratureRule
from plmagnus.utils.logger import logger

DEFAULT_STEPS = (0.1, 0.05, 0.025, 0.0125)
MIN_STEPS = 3
EXACT_TOLERANCE = 1e-12


@dataclass
class Report:
    """Outcome of a convergence study: one error per step size and the fitted slope."""

    problem: str
    description: str
    k: int
    horizon: float
    quadrature: Dict[str, int]
    oracle: str
    steps: List[float] = field(default_factory=list)
    errors: List[float] = field(default_factory=list)
    slope: Optional[float] = None
    exact: bool = False
    oracle_error: float = 0.0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "problem": self.problem,
            "description": self.description,
            "k": self.k,
            "horizon": self.horizon,
            "quadrature": dict(self.quadrature),
            "oracle": self.oracle,
            "oracle_error_estimate": self.oracle_error,
            "rows": [{"h": h, "error": e} for h, e in zip(self.steps, self.errors)],
            "fitted_slope": "exact" if self.exact else self.slope,
        }


def fitted_slope(steps: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(h)."""
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


def magnus_step(problem: TestProblem, t0: float, h: float, k: int, rule: QuadratureRule) -> np.ndarray:
    """exp(Omega_1 + ... + Omega_k) of A restricted to [t0, t0 + h]."""
    local = problem.A.shifted(t0, h)
    omega = sum(omega_terms(local, h, m, rule) for m in range(1, k + 1))
    return matrix_exp(omega)


def convergence_study(
    problem: TestProblem,
    k: int,
    steps: Sequence[float] = DEFAULT_STEPS,
    horizon: float = 1.0,
    rule: Optional[QuadratureRule] = None,
    oracle_steps: int = 2048,
) -> Report:
    """
    Propagate Y' = A Y over [0, horizon] with the k-term Magnus integrator.

    At least three step sizes with a constant ratio are needed, and each
    must divide the horizon. The error at the horizon is measured in the
    spectral norm against the problem's closed-form solution, or else a
    Richardson-extrapolated midpoint product whose correction norm is kept
    as the oracle error estimate.

    Raises:
        NumericError: If k is out of range, the steps are too few or not
            geometric, or a step does not divide the horizon
    """
    if k not in range(1, MAX_OMEGA_TERMS + 1):
        raise NumericError(f"Magnus truncation must be 1..{MAX_OMEGA_TERMS}, got {k}")
    if len(steps) < MIN_STEPS:
        raise NumericError(f"convergence_study needs at least {MIN_STEPS} step sizes, got {len(steps)}")
    rule = rule or QuadratureRule(nodes=4, panels=2)

    counts = []
    for h in steps:
        if h <= 0:
            raise NumericError(f"Step size must be positive, got {h}")
        n = int(round(horizon / h))
        if n < 1 or abs(n * h - horizon) > 1e-9 * horizon:
            raise NumericError(f"Step {h} does not divide the horizon {horizon}")
        counts.append(n)

    ratios = [a / b for a, b in zip(steps, steps[1:])]
    if not np.allclose(ratios, ratios[0], rtol=1e-9, atol=0.0):
        raise NumericError(f"Step sizes must be geometrically spaced, got ratios {ratios}")

    oracle_error = 0.0
    if problem.exact is not None:
        reference = problem.exact(horizon)
        oracle = "closed-form"
    else:
        with logger.timed(f"{problem.name}: reference solution"):
            reference, oracle_error = richardson_reference(problem.A, horizon, oracle_steps)
        oracle = f"midpoint-product n={oracle_steps} with Richardson extrapolation"

    report = Report(
        problem=problem.name,
        description=problem.description,
        k=k,
        horizon=horizon,
        quadrature={"nodes": rule.nodes, "panels_per_step": rule.panels},
        oracle=oracle,
        oracle_error=oracle_error,
    )

    for h, n in zip(steps, counts):
        Y = np.eye(problem.A.dim)
        width = horizon / n
        for j in range(n):
            Y = magnus_step(problem, j * width, width, k, rule) @ Y
        error = float(np.linalg.norm(Y - reference, 2))
        logger.info(f"{problem.name}: k={k} h={h} error={error:.3e}")
        report.steps.append(float(h))
        report.errors.append(error)

    if max(report.errors) <= EXACT_TOLERANCE:
        report.exact = True
    else:
        usable = [(h, e) for h, e in zip(report.steps, report.errors) if e > 0]
        if len(usable) >= 2:
            report.slope = fitted_slope(*zip(*usable))
    return report
