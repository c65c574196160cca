"""
Tests for the named problems and the convergence study.
"""

import numpy as np
import pytest

from plmagnus.numeric.convergence import convergence_study, fitted_slope
from plmagnus.numeric.magnus import NumericError
from plmagnus.numeric.problems import (
    E12,
    E21,
    PROBLEMS,
    ProblemSpecError,
    get_problem,
    parse_polynomial_spec,
)


def test_named_problems():
    assert sorted(PROBLEMS) == ["commuting", "skew", "xty"]
    xty = get_problem("xty")
    np.testing.assert_allclose(xty.A(0.5), E12 + 0.5 * E21)
    assert xty.exact is None
    assert get_problem("commuting").exact is not None

    skew = get_problem("skew").A(0.3)
    np.testing.assert_allclose(skew, -skew.T)


def test_polynomial_problem_spec():
    problem = get_problem("poly:0,1;0,0|0,0;1,0", T=2.0)
    np.testing.assert_allclose(problem.A(1.5), E12 + 1.5 * E21)
    assert problem.A.T == 2.0


@pytest.mark.parametrize(
    "spec",
    ["1,2;3", "1,2;3,4|1", "a,b;c,d", "1,2;3,inf"],
)
def test_malformed_polynomial_specs(spec):
    with pytest.raises(ProblemSpecError):
        parse_polynomial_spec(spec)


def test_unknown_problem():
    with pytest.raises(ProblemSpecError):
        get_problem("pendulum")


def test_fitted_slope_of_power_law():
    steps = [0.1, 0.05, 0.025]
    assert fitted_slope(steps, [3 * h ** 4 for h in steps]) == pytest.approx(4.0)


def test_three_term_integrator_is_fourth_order():
    report = convergence_study(get_problem("xty"), 3)
    assert report.slope == pytest.approx(4.0, abs=0.3)
    assert not report.exact
    assert report.errors == sorted(report.errors, reverse=True)
    assert report.oracle.startswith("midpoint-product")


def test_one_term_integrator_is_second_order():
    report = convergence_study(get_problem("xty"), 1)
    assert report.slope == pytest.approx(2.0, abs=0.3)


def test_commuting_problem_is_exact():
    report = convergence_study(get_problem("commuting"), 1)
    assert report.exact
    assert report.oracle == "closed-form"
    assert report.as_dict()["fitted_slope"] == "exact"
    assert report.oracle_error == 0.0


def test_report_layout():
    report = convergence_study(get_problem("skew"), 2, steps=[0.5, 0.25, 0.125])
    payload = report.as_dict()
    assert [row["h"] for row in payload["rows"]] == [0.5, 0.25, 0.125]
    assert payload["oracle_error_estimate"] == report.oracle_error > 0
    assert payload["quadrature"] == {"nodes": 4, "panels_per_step": 2}
    assert payload["k"] == 2


@pytest.mark.parametrize(
    "k, steps",
    [
        (4, [0.1, 0.05, 0.025]),
        (0, [0.1, 0.05, 0.025]),
        (2, [0.3, 0.15, 0.075]),
        (2, [-0.1, -0.05, -0.025]),
        (2, []),
        (2, [0.5]),
        (2, [0.5, 0.25]),
        (2, [0.5, 0.25, 0.2]),
    ],
)
def test_convergence_study_rejects_bad_arguments(k, steps):
    with pytest.raises(NumericError):
        convergence_study(get_problem("xty"), k, steps=steps)
