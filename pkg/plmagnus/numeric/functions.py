"""
Matrix-valued functions of time, given in closed form or sampled on a grid.
"""

from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from plmagnus.numeric.quadrature import Grid, QuadratureError

Evaluator = Callable[[float], np.ndarray]


class MatrixFunction:
    """
    Square-matrix function on [0, T].

    Either wraps an evaluator callable, or holds samples at the nodes and
    breakpoints of a :class:`Grid`; sampled functions are evaluated between
    samples by interpolating the panel's breakpoints and nodes.
    """

    def __init__(
        self,
        evaluator: Optional[Evaluator] = None,
        dim: Optional[int] = None,
        T: float = 1.0,
        samples: Optional[Tuple[Grid, np.ndarray, np.ndarray]] = None,
    ):
        if (evaluator is None) == (samples is None):
            raise ValueError("MatrixFunction needs exactly one of evaluator or samples")
        self.evaluator = evaluator
        self.samples = samples
        if samples is not None:
            grid, node_values, break_values = samples
            self.T = grid.T
            self.dim = node_values.shape[-1]
        else:
            self.T = float(T)
            self.dim = dim if dim is not None else np.asarray(evaluator(0.0)).shape[0]

    @classmethod
    def constant(cls, matrix: np.ndarray, T: float = 1.0) -> "MatrixFunction":
        matrix = np.asarray(matrix, dtype=float)
        return cls(lambda t: matrix, matrix.shape[0], T)

    @classmethod
    def polynomial(cls, coefficients: Sequence[np.ndarray], T: float = 1.0) -> "MatrixFunction":
        """A(t) = C0 + t C1 + t^2 C2 + ..."""
        stack = np.array([np.asarray(c, dtype=float) for c in coefficients])

        def evaluate(t: float) -> np.ndarray:
            return np.tensordot(t ** np.arange(len(stack)), stack, axes=1)

        return cls(evaluate, stack.shape[-1], T)

    @classmethod
    def from_samples(cls, grid: Grid, node_values: np.ndarray, break_values: np.ndarray) -> "MatrixFunction":
        return cls(samples=(grid, node_values, break_values))

    @property
    def is_sampled(self) -> bool:
        return self.samples is not None

    def __call__(self, t: float) -> np.ndarray:
        if self.evaluator is not None:
            return np.asarray(self.evaluator(t), dtype=float)
        grid, node_values, break_values = self.samples
        panel, local = grid.locate(t)
        if np.isclose(local, 0.0, atol=1e-14):
            return break_values[panel]
        if np.isclose(local, 1.0, atol=1e-14):
            return break_values[panel + 1]
        points = np.concatenate(([0.0], grid.reference_nodes, [1.0]))
        values = np.concatenate(
            (break_values[panel][None], node_values[panel], break_values[panel + 1][None])
        )
        return np.tensordot(_lagrange_weights(points, local), values, axes=1)

    def sample(self, grid: Grid) -> Tuple[np.ndarray, np.ndarray]:
        """
        Values at the grid's nodes, shape (P, k, d, d), and breakpoints, shape (P+1, d, d).

        Raises:
            QuadratureError: If a sampled function is asked for a different grid
        """
        if self.samples is not None:
            own, node_values, break_values = self.samples
            if not own.same_as(grid):
                raise QuadratureError("Sampled matrix function used on a different grid")
            return node_values, break_values
        if grid.T > self.T * (1 + 1e-12):
            raise QuadratureError(f"Grid horizon {grid.T} exceeds function domain {self.T}")
        node_values = np.array([[self(t) for t in row] for row in grid.times])
        break_values = np.array([self(t) for t in grid.breakpoints])
        return node_values, break_values

    def on_grid(self, grid: Grid) -> "MatrixFunction":
        return MatrixFunction.from_samples(grid, *self.sample(grid))

    def shifted(self, t0: float, length: float) -> "MatrixFunction":
        """s -> A(t0 + s) on [0, length]; closed-form functions only."""
        if self.evaluator is None:
            raise QuadratureError("Only closed-form matrix functions can be shifted")
        evaluator = self.evaluator
        return MatrixFunction(lambda s: evaluator(t0 + s), self.dim, length)

    def _combine(self, other: "MatrixFunction", op) -> "MatrixFunction":
        if self.evaluator is not None and other.evaluator is not None:
            f, g = self.evaluator, other.evaluator
            return MatrixFunction(lambda t: op(np.asarray(f(t)), np.asarray(g(t))), self.dim, min(self.T, other.T))
        grid = self.samples[0] if self.samples is not None else other.samples[0]
        a_nodes, a_breaks = self.sample(grid)
        b_nodes, b_breaks = other.sample(grid)
        return MatrixFunction.from_samples(grid, op(a_nodes, b_nodes), op(a_breaks, b_breaks))

    def __add__(self, other: "MatrixFunction") -> "MatrixFunction":
        return self._combine(other, np.add)

    def __sub__(self, other: "MatrixFunction") -> "MatrixFunction":
        return self._combine(other, np.subtract)

    def __mul__(self, scalar: float) -> "MatrixFunction":
        scalar = float(scalar)
        if self.evaluator is not None:
            f = self.evaluator
            return MatrixFunction(lambda t: scalar * np.asarray(f(t)), self.dim, self.T)
        grid, node_values, break_values = self.samples
        return MatrixFunction.from_samples(grid, scalar * node_values, scalar * break_values)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        kind = "sampled" if self.is_sampled else "closed-form"
        return f"MatrixFunction({kind}, dim={self.dim}, T={self.T})"


def _lagrange_weights(points: np.ndarray, x: float) -> np.ndarray:
    weights = np.ones(len(points))
    for j, pj in enumerate(points):
        for m, pm in enumerate(points):
            if m != j:
                weights[j] *= (x - pm) / (pj - pm)
    return weights


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[a, b] = ab - ba, batched over leading axes."""
    return np.matmul(a, b) - np.matmul(b, a)
