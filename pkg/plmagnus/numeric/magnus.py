"""
Magnus expansion terms, reference solvers and matrix exponentials.

Conventions: the equation is Y' = A(t) Y with Y(0) = I, and
Omega(t) = Omega_1 + Omega_2 + ... with

    Omega_1 = int A,
    Omega_2 = -1/2 int [int A, A],
    Omega_3 = 1/4 int [int [int A, A], A] + 1/12 int [int A, [int A, A]].
"""

import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from plmagnus.algebra.element import Element
from plmagnus.algebra.engine import evaluate_prelie
from plmagnus.algebra.exact import (
    bernoulli,
    chen_strichartz_coeff,
    compositions,
    descent_number,
    enumerate_permutations,
)
from plmagnus.numeric.functions import MatrixFunction, commutator
from plmagnus.numeric.quadrature import QuadratureRule
from plmagnus.utils.logger import logger

MAX_OMEGA_TERMS = 3
MAX_RECURSION_TERMS = 5
MAX_CHEN_STRICHARTZ = 3
TAYLOR_TERMS = 30


class NumericError(ValueError):
    """Raised for out-of-range orders and non-finite matrices."""


def cumulative_integral(f: MatrixFunction, rule: QuadratureRule) -> MatrixFunction:
    """t -> integral of f over [0, t], sampled on the rule's mesh of f's domain."""
    grid = rule.grid(f.T)
    node_values, _ = f.sample(grid)
    return MatrixFunction.from_samples(grid, *grid.cumulate(node_values))


def omega_terms(A: MatrixFunction, t: float, k: int, rule: QuadratureRule) -> np.ndarray:
    """
    Omega_k(t) by nested quadrature, k in {1, 2, 3}.

    Raises:
        NumericError: If k is out of range
    """
    if k not in range(1, MAX_OMEGA_TERMS + 1):
        raise NumericError(f"omega_terms supports k = 1..{MAX_OMEGA_TERMS}, got {k}")
    if t == 0:
        return np.zeros((A.dim, A.dim))
    grid = rule.grid(t)
    a_nodes, _ = A.sample(grid)
    omega1_nodes, omega1_breaks = grid.cumulate(a_nodes)
    if k == 1:
        return omega1_breaks[-1]

    inner = commutator(omega1_nodes, a_nodes)
    if k == 2:
        return -0.5 * grid.totals(inner)[-1]

    nested_nodes, _ = grid.cumulate(inner)
    first = grid.totals(commutator(nested_nodes, a_nodes))[-1]
    second = grid.totals(commutator(omega1_nodes, inner))[-1]
    return 0.25 * first + second / 12.0


def _bernoulli_weights(K: int) -> List[float]:
    return [float(bernoulli(m) / math.factorial(m)) for m in range(K)]


def omega_recursion(A: MatrixFunction, t: float, K: int, n_steps: int = 200) -> List[np.ndarray]:
    """
    Omega_1..Omega_K(t) from the coupled system

        Omega_k' = sum_m (B_m/m!) sum_{r1+..+rm = k-1} ad_{Omega_r1} ... ad_{Omega_rm} (A),

    integrated with classical RK4 from zero initial values.

    Raises:
        NumericError: If K or n_steps is out of range
    """
    if K not in range(1, MAX_RECURSION_TERMS + 1):
        raise NumericError(f"omega_recursion supports K = 1..{MAX_RECURSION_TERMS}, got {K}")
    if n_steps < 1:
        raise NumericError(f"omega_recursion needs at least one step, got {n_steps}")

    weights = _bernoulli_weights(K)
    plans: List[List[Tuple[float, Tuple[int, ...]]]] = []
    for k in range(1, K + 1):
        plan = []
        for m in range(0, k):
            if not weights[m]:
                continue
            for parts in compositions(k - 1, m):
                plan.append((weights[m], parts))
        plans.append(plan)

    def rhs(s: float, state: np.ndarray) -> np.ndarray:
        a = A(s)
        out = np.zeros_like(state)
        for k, plan in enumerate(plans):
            for weight, parts in plan:
                value = a
                for r in reversed(parts):
                    value = commutator(state[r - 1], value)
                out[k] += weight * value
        return out

    h = t / n_steps
    state = np.zeros((K, A.dim, A.dim))
    for step in range(n_steps):
        s = step * h
        k1 = rhs(s, state)
        k2 = rhs(s + h / 2, state + h / 2 * k1)
        k3 = rhs(s + h / 2, state + h / 2 * k2)
        k4 = rhs(s + h, state + h * k3)
        state = state + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return [state[k] for k in range(K)]


def matrix_exp(M: np.ndarray) -> np.ndarray:
    """
    Matrix exponential by scaling and squaring with a Taylor series.

    Raises:
        NumericError: If M is not a finite square matrix
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NumericError(f"matrix_exp needs a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NumericError("matrix_exp got non-finite entries")

    norm = np.linalg.norm(M, 1)
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    X = M / (2 ** squarings)

    identity = np.eye(M.shape[0])
    result = identity.copy()
    term = identity
    for j in range(1, TAYLOR_TERMS + 1):
        term = term @ X / j
        result = result + term
        if np.linalg.norm(term, 1) <= 1e-18 * np.linalg.norm(result, 1):
            break

    for _ in range(squarings):
        result = result @ result
    return result


def time_ordered_exp(A: MatrixFunction, t: float, n_steps: int) -> np.ndarray:
    """
    Y(t) by the midpoint exponential product exp(h A(t_{n-1/2})) ... exp(h A(t_{1/2})).

    Second order in h; the product is exactly unimodular when A is traceless.
    """
    if n_steps < 1:
        raise NumericError(f"time_ordered_exp needs at least one step, got {n_steps}")
    h = t / n_steps
    Y = np.eye(A.dim)
    for j in range(n_steps):
        Y = matrix_exp(h * A((j + 0.5) * h)) @ Y
    return Y


def reference_solution(A: MatrixFunction, t: float, n_steps: int, richardson: bool = True) -> np.ndarray:
    """
    Oracle solution: midpoint exponential product, optionally with one Richardson step.

    The midpoint product is time-symmetric, so its error expands in even
    powers of h and (4 Y_{2n} - Y_n) / 3 is fourth-order accurate.
    """
    if not richardson:
        return time_ordered_exp(A, t, n_steps)
    return richardson_reference(A, t, n_steps)[0]


def richardson_reference(A: MatrixFunction, t: float, n_steps: int) -> Tuple[np.ndarray, float]:
    """
    Richardson-extrapolated midpoint product and the size of its correction.

    Returns:
        ((4 Y_{2n} - Y_n) / 3, ||Y_{2n} - Y_n||_2). The norm bounds the error
        of the unextrapolated product and is recorded as the oracle estimate.
    """
    coarse = time_ordered_exp(A, t, n_steps)
    fine = time_ordered_exp(A, t, 2 * n_steps)
    return (4.0 * fine - coarse) / 3.0, float(np.linalg.norm(fine - coarse, 2))


def _bracket_words(positions: Tuple[int, ...]) -> List[Tuple[int, Tuple[int, ...]]]:
    # Expansion of [B_p1, [B_p2, ... B_pn]] into signed products.
    if len(positions) == 1:
        return [(1, positions)]
    first = positions[0]
    words = []
    for sign, word in _bracket_words(positions[1:]):
        words.append((sign, (first,) + word))
        words.append((-sign, word + (first,)))
    return words


def _time_ordered_tensor(A: MatrixFunction, t: float, n: int, rule: QuadratureRule) -> np.ndarray:
    # Integral over 0 <= u_1 <= ... <= u_n <= t of A(u_1) (x) ... (x) A(u_n),
    # built as nested running integrals on the quadrature mesh.
    grid = rule.grid(t)
    a_nodes, _ = A.sample(grid)
    d = A.dim
    level_nodes, level_breaks = grid.cumulate(a_nodes)
    for _ in range(1, n):
        P, k = a_nodes.shape[:2]
        shape = level_nodes.shape[2:]
        integrand = (
            level_nodes.reshape(P, k, -1, 1, 1) * a_nodes.reshape(P, k, 1, d, d)
        ).reshape((P, k) + shape + (d, d))
        level_nodes, level_breaks = grid.cumulate(integrand)
    return level_breaks[-1]


def chen_strichartz_term(A: MatrixFunction, t: float, n: int, rule: QuadratureRule) -> np.ndarray:
    """
    n-th Magnus term from the permutation formula

        sum_sigma (-1)^d / (n^2 C(n-1, d)) int [A(s_sigma1), [..., A(s_sigman)]],

    with s_1 the latest time on the simplex 0 <= s_n <= ... <= s_1 <= t.

    Raises:
        NumericError: If n is out of range
    """
    if n not in range(1, MAX_CHEN_STRICHARTZ + 1):
        raise NumericError(f"chen_strichartz_term supports n = 1..{MAX_CHEN_STRICHARTZ}, got {n}")
    if t == 0:
        return np.zeros((A.dim, A.dim))
    tensor = _time_ordered_tensor(A, t, n, rule)
    letters = "abcdefghijklmnopqrstuvwxyz"
    words = _bracket_words(tuple(range(1, n + 1)))

    total = np.zeros((A.dim, A.dim))
    for sigma in enumerate_permutations(n):
        coefficient = float(chen_strichartz_coeff(n, descent_number(sigma)))
        for sign, word in words:
            # Factor j of the product is A(s_sigma(word[j])), which sits in
            # ascending-time slot n + 1 - sigma(word[j]).
            slot_letters = [""] * n
            for j, position in enumerate(word):
                slot = n - sigma[position - 1]
                slot_letters[slot] = letters[j] + letters[j + 1]
            subscripts = "".join(slot_letters) + "->" + letters[0] + letters[n]
            total += sign * coefficient * np.einsum(subscripts, tensor)
    return total


def chronological_product(X: MatrixFunction, Y: MatrixFunction, rule: QuadratureRule) -> MatrixFunction:
    """X > Y = [int X, Y], pointwise in t."""
    grid = _common_grid(rule, X, Y)
    x_nodes, _ = X.sample(grid)
    y_nodes, y_breaks = Y.sample(grid)
    ix_nodes, ix_breaks = grid.cumulate(x_nodes)
    return MatrixFunction.from_samples(
        grid, commutator(ix_nodes, y_nodes), commutator(ix_breaks, y_breaks)
    )


def succ_product(X: MatrixFunction, Y: MatrixFunction, rule: QuadratureRule) -> MatrixFunction:
    """Right half-shuffle X >- Y = (int X) Y."""
    grid = _common_grid(rule, X, Y)
    x_nodes, _ = X.sample(grid)
    y_nodes, y_breaks = Y.sample(grid)
    ix_nodes, ix_breaks = grid.cumulate(x_nodes)
    return MatrixFunction.from_samples(grid, ix_nodes @ y_nodes, ix_breaks @ y_breaks)


def prec_product(X: MatrixFunction, Y: MatrixFunction, rule: QuadratureRule) -> MatrixFunction:
    """Left half-shuffle X -< Y = X (int Y)."""
    grid = _common_grid(rule, X, Y)
    x_nodes, x_breaks = X.sample(grid)
    y_nodes, _ = Y.sample(grid)
    iy_nodes, iy_breaks = grid.cumulate(y_nodes)
    return MatrixFunction.from_samples(grid, x_nodes @ iy_nodes, x_breaks @ iy_breaks)


def half_shuffles(
    X: MatrixFunction, Y: MatrixFunction, rule: QuadratureRule
) -> Tuple[MatrixFunction, MatrixFunction]:
    """(X >- Y, X -< Y); their sum integrates to (int X)(int Y)."""
    return succ_product(X, Y, rule), prec_product(X, Y, rule)


def _common_grid(rule: QuadratureRule, *functions: MatrixFunction):
    for f in functions:
        if f.is_sampled:
            return f.samples[0]
    return rule.grid(min(f.T for f in functions))


def prelie_omega_term(
    A: MatrixFunction,
    t: float,
    k: int,
    expansion: Element,
    rule: QuadratureRule,
) -> np.ndarray:
    """
    Integral over [0, t] of the degree-k part of a pre-Lie series evaluated at A.

    Trees are evaluated in the chronological algebra (generator A, product
    X > Y = [int X, Y]); with ``expansion`` the pre-Lie Magnus series this
    reproduces Omega_k(t).
    """
    grid = rule.grid(t)
    generator = A.on_grid(grid)
    shape = (grid.panels, grid.nodes, A.dim, A.dim)
    zero = MatrixFunction.from_samples(grid, np.zeros(shape), np.zeros((grid.panels + 1, A.dim, A.dim)))
    value = evaluate_prelie(
        expansion.homogeneous(k),
        generator,
        lambda X, Y: chronological_product(X, Y, rule),
        zero,
    )
    node_values, _ = value.sample(grid)
    return grid.totals(node_values)[-1]


def fit_power_coefficients(
    ts: Sequence[float],
    values: Sequence[np.ndarray],
    powers: Sequence[int],
) -> Dict[int, np.ndarray]:
    """
    Least-squares matrices C_p with values(t) ~ sum_p C_p t^p.

    Returns:
        Mapping from power to fitted coefficient matrix
    """
    ts = np.asarray(ts, dtype=float)
    stacked = np.array([np.asarray(v, dtype=float) for v in values])
    design = ts[:, None] ** np.asarray(powers)[None, :]
    solution, *_ = np.linalg.lstsq(design, stacked.reshape(len(ts), -1), rcond=None)
    shape = stacked.shape[1:]
    logger.debug(f"Fitted powers {list(powers)} from {len(ts)} samples")
    return {p: solution[i].reshape(shape) for i, p in enumerate(powers)}

