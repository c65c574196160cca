"""
Tests for the numeric Magnus terms, exponentials and the pre-Lie bridge.
"""

import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from plmagnus.algebra.element import AlgebraMode
from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.numeric.functions import MatrixFunction, commutator
from plmagnus.numeric.magnus import (
    NumericError,
    chen_strichartz_term,
    cumulative_integral,
    fit_power_coefficients,
    matrix_exp,
    omega_recursion,
    omega_terms,
    prelie_omega_term,
    reference_solution,
    richardson_reference,
    time_ordered_exp,
)
from plmagnus.numeric.problems import E12, E21, commuting_problem, skew_problem, xty_problem
from plmagnus.numeric.quadrature import QuadratureRule

RULE = QuadratureRule(nodes=4, panels=64)
H = commutator(E12, E21)


def test_matrix_exp_matches_scipy():
    rng = np.random.default_rng(5)
    for scale in (0.1, 1.0, 3.0):
        M = scale * rng.normal(size=(4, 4))
        expected = expm(M)
        np.testing.assert_allclose(matrix_exp(M), expected, rtol=1e-10, atol=1e-12 * np.abs(expected).max())


def test_matrix_exp_of_nilpotent_is_exact():
    np.testing.assert_array_equal(matrix_exp(E12), np.eye(2) + E12)
    np.testing.assert_array_equal(matrix_exp(np.zeros((3, 3))), np.eye(3))


@pytest.mark.parametrize("M", [np.ones((2, 3)), np.array([[np.nan, 0.0], [0.0, 1.0]])])
def test_matrix_exp_rejects_bad_input(M):
    with pytest.raises(NumericError):
        matrix_exp(M)


def test_cumulative_integral():
    A = xty_problem().A
    integral = cumulative_integral(A, RULE)
    np.testing.assert_allclose(integral(0.5), 0.5 * E12 + 0.125 * E21, atol=1e-13)


def test_omega_terms_closed_form():
    A = xty_problem().A
    np.testing.assert_allclose(omega_terms(A, 1.0, 1, RULE), E12 + E21 / 2, atol=1e-12)
    np.testing.assert_allclose(omega_terms(A, 1.0, 2, RULE), -H / 12, atol=1e-12)
    np.testing.assert_allclose(omega_terms(A, 1.0, 3, RULE), -E21 / 120, atol=1e-12)
    np.testing.assert_allclose(omega_terms(A, 0.5, 2, RULE), -H / 96, atol=1e-12)


def test_omega_terms_range():
    with pytest.raises(NumericError):
        omega_terms(xty_problem().A, 1.0, 4, RULE)


def test_omega_recursion_matches_quadrature():
    A = skew_problem().A
    recursive = omega_recursion(A, 1.0, 3, n_steps=200)
    for k in range(1, 4):
        np.testing.assert_allclose(recursive[k - 1], omega_terms(A, 1.0, k, RULE), atol=1e-7)


def test_omega_recursion_vanishes_for_commuting_coefficients():
    A = commuting_problem().A
    terms = omega_recursion(A, 1.0, 5, n_steps=50)
    for term in terms[1:]:
        np.testing.assert_allclose(term, 0.0, atol=1e-12)


def test_omega_recursion_range():
    with pytest.raises(NumericError):
        omega_recursion(xty_problem().A, 1.0, 6)
    with pytest.raises(NumericError):
        omega_recursion(xty_problem().A, 1.0, 2, n_steps=0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("build", [xty_problem, skew_problem])
def test_chen_strichartz_matches_omega(build, n):
    A = build().A
    np.testing.assert_allclose(chen_strichartz_term(A, 1.0, n, RULE), omega_terms(A, 1.0, n, RULE), atol=1e-5)


def test_chen_strichartz_range():
    with pytest.raises(NumericError):
        chen_strichartz_term(xty_problem().A, 1.0, 4, RULE)


def test_magnus_series_approximates_flow():
    problem = skew_problem()
    omega = sum(omega_terms(problem.A, 0.2, k, RULE) for k in range(1, 4))
    reference = reference_solution(problem.A, 0.2, 256)
    np.testing.assert_allclose(matrix_exp(omega), reference, atol=1e-4)


def test_reference_solution_against_scipy():
    problem = skew_problem()

    def rhs(t, y):
        return (problem.A(t) @ y.reshape(3, 3)).ravel()

    solution = solve_ivp(rhs, (0.0, 1.0), np.eye(3).ravel(), method="DOP853", rtol=1e-12, atol=1e-12)
    expected = solution.y[:, -1].reshape(3, 3)
    Y = reference_solution(problem.A, 1.0, 1024)
    np.testing.assert_allclose(Y, expected, atol=1e-9)
    np.testing.assert_allclose(Y.T @ Y, np.eye(3), atol=1e-9)


def test_reference_solution_closed_form():
    problem = commuting_problem()
    np.testing.assert_allclose(reference_solution(problem.A, 1.0, 2048), problem.exact(1.0), atol=1e-9)


def test_richardson_improves_midpoint_product():
    problem = commuting_problem()
    exact = problem.exact(1.0)
    plain = np.abs(time_ordered_exp(problem.A, 1.0, 64) - exact).max()
    extrapolated = np.abs(reference_solution(problem.A, 1.0, 64) - exact).max()
    assert extrapolated < plain / 10


def test_richardson_reference_reports_correction():
    problem = commuting_problem()
    Y, estimate = richardson_reference(problem.A, 1.0, 64)
    np.testing.assert_array_equal(Y, reference_solution(problem.A, 1.0, 64))
    coarse_error = np.linalg.norm(time_ordered_exp(problem.A, 1.0, 64) - problem.exact(1.0), 2)
    # ||Y_2n - Y_n|| = (3/4) ||Y_n - Y|| up to higher-order terms
    assert estimate == pytest.approx(0.75 * coarse_error, rel=0.05)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_omega_terms_vanish_at_zero(k):
    A = xty_problem().A
    np.testing.assert_array_equal(omega_terms(A, 0.0, k, RULE), np.zeros((2, 2)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chen_strichartz_vanishes_at_zero(n):
    A = skew_problem().A
    np.testing.assert_array_equal(chen_strichartz_term(A, 0.0, n, RULE), np.zeros((3, 3)))


def test_fit_power_coefficients():
    C1, C3 = np.eye(2), np.array([[0.0, 2.0], [-1.0, 0.5]])
    ts = [0.2, 0.4, 0.6, 0.8, 1.0]
    values = [C1 * t + C3 * t ** 3 for t in ts]
    fitted = fit_power_coefficients(ts, values, [1, 3])
    np.testing.assert_allclose(fitted[1], C1, atol=1e-10)
    np.testing.assert_allclose(fitted[3], C3, atol=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_prelie_expansion_reproduces_omega(k):
    algebra = PostLieAlgebra(AlgebraMode.PRELIE, 3)
    expansion = algebra.prelie_magnus(algebra.generator())
    for build in (xty_problem, skew_problem):
        A = build().A
        symbolic = prelie_omega_term(A, 1.0, k, expansion, RULE)
        np.testing.assert_allclose(symbolic, omega_terms(A, 1.0, k, RULE), atol=1e-6)


def test_matrix_function_constant_exponential():
    M = np.array([[0.0, 1.0], [-1.0, 0.0]])
    A = MatrixFunction.constant(M)
    np.testing.assert_allclose(time_ordered_exp(A, 1.0, 4), expm(M), atol=1e-12)
