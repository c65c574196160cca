"""
Composite Gauss-Legendre quadrature on [0, T].
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss


class QuadratureError(ValueError):
    """Raised for empty meshes and invalid integration domains."""


@dataclass(frozen=True)
class QuadratureRule:
    """
    Gauss-Legendre rule with ``nodes`` points on each of ``panels`` equal panels.

    Exact for polynomials of degree up to 2*nodes - 1 on every panel.
    """

    nodes: int = 4
    panels: int = 64

    def __post_init__(self) -> None:
        if self.nodes < 1:
            raise QuadratureError(f"Quadrature needs at least one node per panel, got {self.nodes}")
        if self.panels < 1:
            raise QuadratureError(f"Quadrature mesh is empty ({self.panels} panels)")

    def reference(self) -> Tuple[np.ndarray, np.ndarray]:
        """Nodes and weights mapped to [0, 1]."""
        x, w = leggauss(self.nodes)
        return (x + 1.0) / 2.0, w / 2.0

    def integration_matrix(self) -> np.ndarray:
        """
        Matrix S with S[i, j] = integral over [0, xi_i] of the j-th Lagrange basis polynomial.

        Applied to node values it gives the integral from the panel start to
        each node, exact for polynomials of degree below ``nodes``.
        """
        xi, _ = self.reference()
        powers = np.arange(self.nodes)
        vandermonde = xi[:, None] ** powers[None, :]
        moments = xi[:, None] ** (powers[None, :] + 1) / (powers[None, :] + 1)
        return moments @ np.linalg.inv(vandermonde)

    def grid(self, T: float) -> "Grid":
        """Mesh of [0, T] for this rule."""
        if not np.isfinite(T) or T <= 0:
            raise QuadratureError(f"Integration horizon must be positive and finite, got {T}")
        return Grid(float(T), self)

    def integrate(self, f, T: float) -> np.ndarray:
        """Integral of a (matrix-valued) callable over [0, T]."""
        grid = self.grid(T)
        values = np.array([[np.asarray(f(t), dtype=float) for t in row] for row in grid.times])
        return grid.totals(values)[-1]


@dataclass(frozen=True, eq=False)
class Grid:
    """Breakpoints and node times of a rule on [0, T]."""

    T: float
    rule: QuadratureRule
    width: float = field(init=False)
    breakpoints: np.ndarray = field(init=False, repr=False)
    times: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    reference_nodes: np.ndarray = field(init=False, repr=False)
    integration: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        xi, w = self.rule.reference()
        panels = self.rule.panels
        width = self.T / panels
        starts = width * np.arange(panels)
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "breakpoints", np.append(starts, self.T))
        object.__setattr__(self, "times", starts[:, None] + width * xi[None, :])
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "reference_nodes", xi)
        object.__setattr__(self, "integration", self.rule.integration_matrix())

    @property
    def panels(self) -> int:
        return self.rule.panels

    @property
    def nodes(self) -> int:
        return self.rule.nodes

    def same_as(self, other: "Grid") -> bool:
        return self.T == other.T and self.rule == other.rule

    def totals(self, node_values: np.ndarray) -> np.ndarray:
        """Running integral at the breakpoints; entry 0 is zero, entry P the full integral."""
        panel_sums = self.width * np.einsum("k,pk...->p...", self.weights, node_values)
        running = np.zeros((self.panels + 1,) + node_values.shape[2:])
        running[1:] = np.cumsum(panel_sums, axis=0)
        return running

    def cumulate(self, node_values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Running integral of sampled values, at the nodes and at the breakpoints.

        Args:
            node_values: Array of shape (panels, nodes, ...)

        Returns:
            (values at nodes, values at breakpoints) with the trailing shape kept
        """
        running = self.totals(node_values)
        inner = self.width * np.einsum("ij,pj...->pi...", self.integration, node_values)
        return running[:-1, None] + inner, running

    def locate(self, t: float) -> Tuple[int, float]:
        """Panel index and local coordinate in [0, 1] of time t."""
        if t < 0 or t > self.T * (1 + 1e-12):
            raise QuadratureError(f"Time {t} outside [0, {self.T}]")
        panel = min(int(t / self.width), self.panels - 1)
        return panel, (t - self.breakpoints[panel]) / self.width
