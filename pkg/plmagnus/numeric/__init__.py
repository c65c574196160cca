"""
Numeric Magnus integrators for linear matrix ODEs Y' = A(t) Y.
"""

from plmagnus.numeric.functions import MatrixFunction
from plmagnus.numeric.quadrature import Grid, QuadratureError, QuadratureRule

__all__ = ["Grid", "MatrixFunction", "QuadratureError", "QuadratureRule"]
