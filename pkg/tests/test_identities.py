"""
Tests for the chronological and dendriform identities on sampled functions.
"""

import numpy as np
import pytest

from plmagnus.numeric.identities import (
    chronological_residual,
    dendriform_residuals,
    random_polynomial_functions,
)
from plmagnus.numeric.magnus import chronological_product, half_shuffles
from plmagnus.numeric.quadrature import QuadratureRule

RULE = QuadratureRule(nodes=6, panels=16)


@pytest.fixture
def functions():
    return random_polynomial_functions(3)


def test_random_functions_are_reproducible():
    first = random_polynomial_functions(2, seed=4)
    second = random_polynomial_functions(2, seed=4)
    np.testing.assert_array_equal(first[1](0.3), second[1](0.3))
    assert first[0].dim == 3


def test_chronological_product_is_prelie(functions):
    X, Y, Z = functions
    assert chronological_residual(X, Y, Z, RULE) < 1e-10


def test_chronological_product_is_not_associative(functions):
    X, Y, Z = functions
    grid = RULE.grid(1.0)
    X, Y, Z = (f.on_grid(grid) for f in (X, Y, Z))
    left = chronological_product(chronological_product(X, Y, RULE), Z, RULE)
    right = chronological_product(X, chronological_product(Y, Z, RULE), RULE)
    node_values, _ = (left - right).sample(grid)
    assert np.abs(node_values).max() > 1e-3


def test_dendriform_axioms(functions):
    residuals = dendriform_residuals(*functions, RULE)
    assert len(residuals) == 4
    for name, value in residuals.items():
        assert value < 1e-10, name


def test_half_shuffles_split_the_integral_of_products(functions):
    X, Y, _ = functions
    grid = RULE.grid(1.0)
    X, Y = X.on_grid(grid), Y.on_grid(grid)
    succ, prec = half_shuffles(X, Y, RULE)
    # d/dt (int X)(int Y) = X (int Y) + (int X) Y
    x_nodes, _ = X.sample(grid)
    y_nodes, _ = Y.sample(grid)
    _, ix = grid.cumulate(x_nodes)
    _, iy = grid.cumulate(y_nodes)
    total_nodes, _ = (succ + prec).sample(grid)
    integral = grid.totals(total_nodes)[-1]
    np.testing.assert_allclose(integral, ix[-1] @ iy[-1], atol=1e-10)
