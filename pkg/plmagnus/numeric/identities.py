"""
Residuals of the chronological (pre-Lie) and dendriform identities on sampled functions.
"""

from typing import Dict, List

import numpy as np

from plmagnus.numeric.functions import MatrixFunction
from plmagnus.numeric.magnus import chronological_product, prec_product, succ_product
from plmagnus.numeric.quadrature import QuadratureRule

IDENTITY_SEED = 11


def random_polynomial_functions(
    count: int,
    dim: int = 3,
    degree: int = 2,
    seed: int = IDENTITY_SEED,
    T: float = 1.0,
) -> List[MatrixFunction]:
    """Polynomial matrix functions with uniform coefficients in [-1, 1], reproducible by seed."""
    rng = np.random.default_rng(seed)
    return [
        MatrixFunction.polynomial(list(rng.uniform(-1.0, 1.0, size=(degree + 1, dim, dim))), T)
        for _ in range(count)
    ]


def _sup(f: MatrixFunction, grid) -> float:
    node_values, break_values = f.sample(grid)
    return float(max(np.abs(node_values).max(), np.abs(break_values).max()))


def chronological_residual(
    X: MatrixFunction, Y: MatrixFunction, Z: MatrixFunction, rule: QuadratureRule
) -> float:
    """Sup norm of (X>Y)>Z - X>(Y>Z) - (Y>X)>Z + Y>(X>Z) on the mesh."""
    grid = rule.grid(min(X.T, Y.T, Z.T))
    X, Y, Z = X.on_grid(grid), Y.on_grid(grid), Z.on_grid(grid)

    def prod(a, b):
        return chronological_product(a, b, rule)

    residual = prod(prod(X, Y), Z) - prod(X, prod(Y, Z)) - prod(prod(Y, X), Z) + prod(Y, prod(X, Z))
    return _sup(residual, grid)


def dendriform_residuals(
    X: MatrixFunction, Y: MatrixFunction, Z: MatrixFunction, rule: QuadratureRule
) -> Dict[str, float]:
    """
    Sup-norm residuals of the three dendriform axioms, with X * Y = X >- Y + X -< Y.

    Also reports the split X > Y = X >- Y - Y -< X of the chronological product.
    """
    grid = rule.grid(min(X.T, Y.T, Z.T))
    X, Y, Z = X.on_grid(grid), Y.on_grid(grid), Z.on_grid(grid)

    def succ(a, b):
        return succ_product(a, b, rule)

    def prec(a, b):
        return prec_product(a, b, rule)

    def star(a, b):
        return succ(a, b) + prec(a, b)

    return {
        "(X-<Y)-<Z = X-<(Y*Z)": _sup(prec(prec(X, Y), Z) - prec(X, star(Y, Z)), grid),
        "(X>-Y)-<Z = X>-(Y-<Z)": _sup(prec(succ(X, Y), Z) - succ(X, prec(Y, Z)), grid),
        "(X*Y)>-Z = X>-(Y>-Z)": _sup(succ(star(X, Y), Z) - succ(X, succ(Y, Z)), grid),
        "X>Y = X>-Y - Y-<X": _sup(
            chronological_product(X, Y, rule) - (succ(X, Y) - prec(Y, X)), grid
        ),
    }
