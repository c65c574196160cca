"""
Invariant suites run by the ``verify`` command.

Each suite is a function registered with :func:`suite`; it receives a
:class:`VerificationContext` and returns a :class:`SuiteResult`. Exact
suites report the largest coefficient of the difference between the two
sides, numeric suites a sup-norm residual.
"""

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from plmagnus.algebra.element import AlgebraMode, Element, monomial_degree
from plmagnus.algebra.engine import PostLieAlgebra, abelianize_element, evaluate_words
from plmagnus.algebra.exact import (
    bell_number,
    bernoulli,
    descent_number,
    enumerate_permutations,
    enumerate_set_partitions,
)
from plmagnus.algebra.trees import (
    abelianize,
    catalan,
    enumerate_nonplanar_trees,
    enumerate_trees,
    left_graft_sum,
    parse_tree,
)
from plmagnus.numeric.convergence import convergence_study
from plmagnus.numeric.identities import (
    chronological_residual,
    dendriform_residuals,
    random_polynomial_functions,
)
from plmagnus.numeric.magnus import (
    chen_strichartz_term,
    fit_power_coefficients,
    omega_recursion,
    omega_terms,
    prelie_omega_term,
    reference_solution,
)
from plmagnus.numeric.problems import E12, E21, PROBLEMS
from plmagnus.numeric.quadrature import QuadratureRule
from plmagnus.utils.config import RunConfig
from plmagnus.utils.logger import logger

GROUPS = ("exact", "trees", "postlie", "bch", "prelie", "numeric")

# Rooted (non-planar) trees by number of vertices.
NONPLANAR_COUNTS = {1: 1, 2: 1, 3: 2, 4: 4, 5: 9, 6: 20, 7: 48}

# chi(x) through order 4, by letter encodings.
CHI_TABLE = {
    ("[]",): Fraction(1),
    ("[[]]",): Fraction(-1, 2),
    ("[[[]]]",): Fraction(1, 3),
    ("[[][]]",): Fraction(1, 12),
    ("[]", "[[]]"): Fraction(-1, 12),
    ("[[]]", "[]"): Fraction(1, 12),
    ("[[[[]]]]",): Fraction(-1, 4),
    ("[[[][]]]",): Fraction(-1, 12),
    ("[[[]][]]",): Fraction(-1, 12),
    ("[]", "[[[]]]"): Fraction(1, 12),
    ("[]", "[[][]]"): Fraction(1, 24),
    ("[[[]]]", "[]"): Fraction(-1, 12),
    ("[[][]]", "[]"): Fraction(-1, 24),
}


@dataclass
class SuiteResult:
    """Outcome of one invariant suite."""

    name: str
    group: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


@dataclass
class VerificationContext:
    """Algebras and numeric settings shared by the suites of one run."""

    run_config: RunConfig
    postlie: PostLieAlgebra = field(init=False)
    prelie: PostLieAlgebra = field(init=False)
    rule: QuadratureRule = field(init=False)

    def __post_init__(self) -> None:
        order = self.run_config.truncation_order
        self.postlie = PostLieAlgebra(
            AlgebraMode.POSTLIE, order, self.run_config.max_order, self.run_config.partition_cap,
            self.run_config.tree_cap,
        )
        self.prelie = PostLieAlgebra(
            AlgebraMode.PRELIE, order, self.run_config.max_order, self.run_config.partition_cap,
            self.run_config.tree_cap,
        )
        self.rule = QuadratureRule(self.run_config.quadrature_nodes, self.run_config.quadrature_panels)

    def algebra(self, order: int, mode: AlgebraMode = AlgebraMode.POSTLIE) -> PostLieAlgebra:
        """A fresh algebra truncated at min(order, configured order)."""
        base = self.postlie if mode is AlgebraMode.POSTLIE else self.prelie
        if order >= base.order:
            return base
        return PostLieAlgebra(mode, order, self.run_config.max_order, self.run_config.partition_cap,
                              self.run_config.tree_cap)


SuiteFunction = Callable[[VerificationContext], SuiteResult]
_suites: List[SuiteFunction] = []


def suite(name: str, group: str, tolerance: float = 0.0):
    """
    Register a suite body under a display name and group.

    The decorated body returns ``(residual, detail)``; the wrapper turns it
    into a SuiteResult, passing when residual <= tolerance. A body that
    raises a ValueError or ArithmeticError fails with an infinite residual.
    """
    if group not in GROUPS:
        raise ValueError(f"Unknown suite group {group!r}")

    def decorator(body: Callable[[VerificationContext], tuple]) -> SuiteFunction:
        def run(context: VerificationContext) -> SuiteResult:
            try:
                residual, detail = body(context)
            except (ArithmeticError, ValueError) as e:
                logger.error(f"Suite {name} raised {type(e).__name__}: {e}")
                residual, detail = float("inf"), f"raised {type(e).__name__}: {e}"
            residual = float(residual)
            passed = bool(np.isfinite(residual)) and residual <= tolerance
            return SuiteResult(name, group, passed, residual, tolerance, detail)

        run.suite_name = name  # type: ignore[attr-defined]
        run.suite_group = group  # type: ignore[attr-defined]
        _suites.append(run)
        return run

    return decorator


def get_suites(only: Optional[Sequence[str]] = None) -> List[SuiteFunction]:
    """
    Registered suites, optionally filtered by group name.

    Raises:
        ValueError: If a requested group does not exist
    """
    if not only:
        return list(_suites)
    unknown = [g for g in only if g not in GROUPS]
    if unknown:
        raise ValueError(f"Unknown suite group(s): {', '.join(unknown)}; choose from {', '.join(GROUPS)}")
    return [s for s in _suites if s.suite_group in only]


def run_suites(context: VerificationContext, only: Optional[Sequence[str]] = None) -> List[SuiteResult]:
    """Run the selected suites in registration order."""
    results = []
    for run in get_suites(only):
        logger.info(f"Running suite: {run.suite_name}")
        with logger.timed(f"Suite {run.suite_name}"):
            result = run(context)
        if not result.passed:
            logger.warning(f"Suite failed: {result.name} (residual {result.residual:.3e})")
        results.append(result)
    return results


def _difference(a: Element, b: Element) -> float:
    diff = a - b
    return float(max((abs(c) for _, c in diff.items()), default=0))


def _worst(values: Iterable[float]) -> float:
    return max(values, default=0.0)


# Exact combinatorics


@suite("Bernoulli odd vanishing", "exact")
def _bernoulli_suite(context):
    known = {0: Fraction(1), 1: Fraction(-1, 2), 2: Fraction(1, 6), 4: Fraction(-1, 30),
             6: Fraction(1, 42), 8: Fraction(-1, 30), 10: Fraction(5, 66)}
    worst = _worst(abs(float(bernoulli(n))) for n in range(3, 26, 2))
    worst = max(worst, _worst(abs(float(bernoulli(n) - v)) for n, v in known.items()))
    return worst, "B_odd = 0 for n = 3..25; B_0..B_10 tabulated"


@suite("Bell counts", "exact")
def _bell_suite(context):
    cap = context.run_config.partition_cap
    mismatches = 0
    for n in range(cap + 1):
        partitions = enumerate_set_partitions(n, cap)
        mismatches += len(partitions) != bell_number(n)
        for partition in partitions:
            maxima = [max(block) for block in partition.blocks]
            mismatches += maxima != sorted(maxima)
    return mismatches, f"n = 0..{cap} against the Bell triangle, canonical block order"


@suite("Descent reversal", "exact")
def _descent_suite(context):
    n_max = min(6, context.run_config.permutation_cap)
    mismatches = 0
    for n in range(1, n_max + 1):
        for p in enumerate_permutations(n, context.run_config.permutation_cap):
            mismatches += descent_number(p) + descent_number(p.reversed()) != n - 1
    return mismatches, f"d(p) + d(reverse p) = n - 1 for n <= {n_max}"


@suite("Rational closure", "exact")
def _rational_suite(context):
    rng = random.Random(1729)
    failures = 0
    for _ in range(500):
        a = Fraction(rng.randint(-10 ** 12, 10 ** 12), rng.randint(1, 10 ** 9))
        b = Fraction(rng.randint(-10 ** 12, 10 ** 12) or 1, rng.randint(1, 10 ** 9))
        failures += (a + b) - b != a
        failures += (a * b) / b != a
        failures += (a / b) * b != a
    return failures, "500 random add/mul/div round trips"


# Trees


@suite("Catalan tree counts", "trees")
def _catalan_suite(context):
    cap = context.run_config.tree_cap
    mismatches = sum(len(enumerate_trees(n, cap)) != catalan(n - 1) for n in range(1, cap + 1))
    mismatches += sum(
        len(enumerate_nonplanar_trees(n, cap)) != count
        for n, count in NONPLANAR_COUNTS.items() if n <= cap
    )
    return mismatches, f"planar counts to degree {cap}, non-planar counts to 7"


@suite("Grafting degree additivity", "trees")
def _grafting_suite(context):
    trees = [t for n in range(1, 5) for t in enumerate_trees(n)]
    failures = 0
    for t1, t2 in itertools.product(trees, repeat=2):
        grafted = left_graft_sum(t1, t2)
        failures += sum(grafted.values()) != t2.degree
        failures += any(t.degree != t1.degree + t2.degree for t in grafted)
    return failures, "term count and degree of every grafting up to degree 4"


@suite("Abelianize invariance", "trees")
def _abelianize_suite(context):
    failures = 0
    for n in range(1, 7):
        for t in enumerate_trees(n):
            canonical = abelianize(t)
            failures += abelianize(canonical) != canonical
    failures += abelianize(parse_tree("[[[]][]]")) != parse_tree("[[][[]]]")
    return failures, "idempotent on all trees to degree 6"


# Post-Lie algebra


def _primitives(algebra: PostLieAlgebra) -> List[Element]:
    x, y = algebra.tree("[]"), algebra.tree("[[]]")
    return [x, y, algebra.hbracket(x, y), algebra.tree("[[[]]]"), algebra.tree("[[][]]")]


def _small_pairs(items: List[Element], order: int):
    for a, b in itertools.product(items, repeat=2):
        if min(a.degrees()) + min(b.degrees()) <= order:
            yield a, b


@suite("PL1", "postlie")
def _pl1_suite(context):
    algebra = context.postlie
    items = _primitives(algebra)
    worst = 0.0
    for a, b, c in itertools.product(items, repeat=3):
        if min(a.degrees()) + min(b.degrees()) + min(c.degrees()) > algebra.order:
            continue
        left = algebra.post_lie_prod(a, algebra.hbracket(b, c))
        right = algebra.hbracket(algebra.post_lie_prod(a, b), c) + algebra.hbracket(b, algebra.post_lie_prod(a, c))
        worst = max(worst, _difference(left, right))
    return worst, "a > [b, c] = [a > b, c] + [b, a > c]"


@suite("PL2", "postlie")
def _pl2_suite(context):
    algebra = context.postlie
    items = _primitives(algebra)
    prod = algebra.post_lie_prod
    worst = 0.0
    for a, b, c in itertools.product(items, repeat=3):
        if min(a.degrees()) + min(b.degrees()) + min(c.degrees()) > algebra.order:
            continue
        left = prod(algebra.hbracket(a, b), c)
        right = prod(a, prod(b, c)) - prod(prod(a, b), c) - prod(b, prod(a, c)) + prod(prod(b, a), c)
        worst = max(worst, _difference(left, right))
    return worst, "[a, b] > c = a(a, b, c) - a(b, a, c)"


@suite("GL associativity", "postlie")
def _gl_suite(context):
    order = min(5, context.postlie.order)
    algebra = PostLieAlgebra(AlgebraMode.POSTLIE, order, context.run_config.max_order)
    words = [w for d in range(1, order + 1) for w in algebra.basis(d)]
    worst = 0.0
    checked = 0
    for wa, wb, wc in itertools.product(words, repeat=3):
        if monomial_degree(wa) + monomial_degree(wb) + monomial_degree(wc) > order:
            continue
        a, b, c = (algebra.element({w: 1}) for w in (wa, wb, wc))
        left = algebra.gl_mul(algebra.gl_mul(a, b), c)
        right = algebra.gl_mul(a, algebra.gl_mul(b, c))
        worst = max(worst, _difference(left, right))
        checked += 1
    return worst, f"(A * B) * C = A * (B * C) on {checked} basis triples, degree <= {order}"


@suite("Theta morphism", "postlie")
def _theta_morphism_suite(context):
    order = min(5, context.postlie.order)
    algebra = context.algebra(order)
    words = [w for d in range(1, order + 1) for w in algebra.basis(d)]
    worst = 0.0
    for w1, w2 in itertools.product(words, repeat=2):
        if monomial_degree(w1) + monomial_degree(w2) > order:
            continue
        a, b = algebra.element({w1: 1}), algebra.element({w2: 1})
        left = algebra.theta(algebra.concat_mul(a, b))
        right = algebra.gl_mul(algebra.theta(a), algebra.theta(b))
        worst = max(worst, _difference(left, right))
    return worst, f"Theta(w1 w2) = Theta(w1) * Theta(w2), degree <= {order}"


@suite("Theta set partitions", "postlie")
def _theta_partition_suite(context):
    algebra = context.postlie
    worst = 0.0
    for d in range(1, algebra.order + 1):
        for word in algebra.basis(d):
            a = algebra.element({word: 1})
            image = algebra.theta(a)
            worst = max(worst, _difference(image, algebra.theta_via_partitions(a)))
            worst = max(worst, _difference(algebra.theta_inverse(image), a))
    return worst, f"iterated GL product = set-partition sum, inverse round trip, degree <= {algebra.order}"


@suite("Chi coefficients", "postlie")
def _chi_table_suite(context):
    algebra = context.algebra(4)
    chi = algebra.post_lie_magnus(algebra.generator())
    expected = algebra.element({tuple(parse_tree(t) for t in word): c for word, c in CHI_TABLE.items()})
    return _difference(chi, expected), "chi(x) through order 4 against tabulated coefficients"


@suite("Chi recursion", "postlie")
def _chi_recursion_suite(context):
    algebra = context.postlie
    x = algebra.generator()
    chi = algebra.post_lie_magnus(x)
    worst = max(
        _difference(chi, algebra.post_lie_magnus_recursive(x)),
        _difference(chi, algebra.post_lie_magnus_fixed_point(x)),
    )
    return worst, f"log/exp, graded recursion and set-partition fixed point agree to order {algebra.order}"


@suite("Chi-Phi inverse", "postlie")
def _inverse_suite(context):
    algebra = context.postlie
    x = algebra.generator()
    worst = 0.0
    for p in (x, x + algebra.tree("[[]]"), algebra.hbracket(x, algebra.tree("[[]]")) + x):
        worst = max(worst, _difference(algebra.inverse_magnus(algebra.post_lie_magnus(p)), p))
        worst = max(worst, _difference(algebra.post_lie_magnus(algebra.inverse_magnus(p)), p))
    return worst, "Phi(chi(x)) = x and chi(Phi(x)) = x"


@suite("Primitivity preservation", "postlie")
def _primitive_suite(context):
    algebra = context.algebra(5)
    x, y = algebra.generator(), algebra.tree("[[]]")
    outputs = [
        algebra.post_lie_magnus(x),
        algebra.inverse_magnus(x),
        algebra.post_lie_prod(x, y),
        algebra.gbracket(x, y),
        algebra.upsilon(x, y),
        algebra.star_group(x, y),
        algebra.bch_h(x, y),
        algebra.bch_g(x, y),
    ]
    failures = sum(not algebra.is_primitive(value) for value in outputs)
    failures += not algebra.is_grouplike(algebra.exp_gl(x))
    failures += not algebra.is_grouplike(algebra.exp_concat(y))
    return failures, "Lie-valued operations stay primitive, exponentials group-like"


@suite("Exp-Upsilon", "postlie")
def _exp_upsilon_suite(context):
    algebra = context.algebra(5)
    letters = [algebra.generator(), algebra.tree("[[]]")]
    worst = 0.0
    for a, b in itertools.product(letters, repeat=2):
        left = algebra.post_lie_prod(algebra.exp_concat(a), b)
        right = algebra.upsilon(algebra.post_lie_magnus(a), b)
        worst = max(worst, _difference(left, right))
    return worst, "exp(a) > b = Upsilon_chi(a)(b)"


@suite("Crossed morphism", "postlie")
def _crossed_suite(context):
    algebra = context.algebra(4)
    letters = [algebra.generator(), algebra.tree("[[]]")]
    worst = 0.0
    for x, y in itertools.product(letters, repeat=2):
        left = algebra.inverse_magnus(algebra.bch_g(x, y))
        right = algebra.bch_h(algebra.inverse_magnus(x), algebra.upsilon(x, algebra.inverse_magnus(y)))
        worst = max(worst, _difference(left, right))
    return worst, "Phi(x g y) = Phi(x) h Upsilon_x(Phi(y))"


@suite("Monomial count", "postlie")
def _count_suite(context):
    algebra = context.postlie
    mismatches = sum(len(algebra.basis(d)) != catalan(d) for d in range(algebra.order + 1))
    return mismatches, f"Catalan(d) monomials of degree d <= {algebra.order}"


# BCH and group structures


@suite("Group morphism (bch1)", "bch")
def _bch_morphism_suite(context):
    algebra = context.algebra(5)
    letters = [algebra.generator(), algebra.tree("[[]]")]
    worst = 0.0
    for a, b in itertools.product(letters, repeat=2):
        chi_a = algebra.post_lie_magnus(a)
        left = algebra.post_lie_magnus(algebra.bch_h(a, algebra.upsilon(chi_a, b)))
        right = algebra.bch_g(chi_a, algebra.post_lie_magnus(b))
        worst = max(worst, _difference(left, right))
    return worst, "chi(BCH_h(a, Upsilon_chi(a)(b))) = BCH_g(chi(a), chi(b))"


@suite("Star consistency", "bch")
def _star_suite(context):
    algebra = context.algebra(4)
    letters = [algebra.generator(), algebra.tree("[[]]")]
    worst = 0.0
    for a, b in itertools.product(letters, repeat=2):
        star = algebra.star_group(a, b)
        chi_a = algebra.post_lie_magnus(a)
        worst = max(worst, _difference(star, algebra.bch_h(a, algebra.upsilon(chi_a, b))))
        worst = max(worst, _difference(
            algebra.post_lie_magnus(star), algebra.bch_g(chi_a, algebra.post_lie_magnus(b))
        ))
    return worst, "a star b = BCH_h(a, Upsilon_chi(a)(b)); chi is a group morphism"


def _series_mul(a: List[np.ndarray], b: List[np.ndarray]) -> List[np.ndarray]:
    out = [np.zeros_like(a[0]) for _ in a]
    for i, ai in enumerate(a):
        for j in range(len(a) - i):
            out[i + j] = out[i + j] + ai @ b[j]
    return out


def matrix_bch_series(P: np.ndarray, Q: np.ndarray, weights: Sequence[int], top: int) -> List[np.ndarray]:
    """
    Coefficients of s^0..s^top in log(exp(s^w1 P) exp(s^w2 Q)) by truncated power series.

    Independent of the tree engine; used as a matrix oracle for BCH.
    """
    dim = P.shape[0]

    def exp_series(M: np.ndarray, weight: int) -> List[np.ndarray]:
        series = [np.zeros((dim, dim)) for _ in range(top + 1)]
        power = np.eye(dim)
        for n in range(0, top // weight + 1):
            series[n * weight] = power / math.factorial(n)
            power = power @ M
        return series

    product = _series_mul(exp_series(P, weights[0]), exp_series(Q, weights[1]))
    u = [m.copy() for m in product]
    u[0] = u[0] - np.eye(dim)
    result = [np.zeros((dim, dim)) for _ in range(top + 1)]
    power = u
    for m in range(1, top + 1):
        result = [r + ((-1) ** (m + 1) / m) * p for r, p in zip(result, power)]
        power = _series_mul(power, u)
    return result


@suite("BCH reproduction", "bch", tolerance=1e-10)
def _bch_literal_suite(context):
    algebra = context.algebra(5)
    x, y = algebra.generator(), algebra.tree("[[]]")
    br = algebra.hbracket
    literal = (
        x + y + br(x, y) / 2
        + (br(x, br(x, y)) + br(y, br(y, x))) / 12
    )
    worst = _difference(algebra.bch_h(x, y), literal)
    worst = max(worst, _difference(algebra.bch_g(x, algebra.zero()), x))

    rng = np.random.default_rng(3)
    P, Q = rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
    substitution = {parse_tree("[]"): P, parse_tree("[[]]"): Q}
    oracle = matrix_bch_series(P, Q, (1, 2), 4)[4]
    engine = evaluate_words(algebra.bch_h(x, y).homogeneous(4), substitution)
    worst = max(worst, float(np.abs(engine - oracle).max()))
    return worst, "BCH_h(x, y) to order 5 literally; degree-4 part against matrix series"


# Pre-Lie degeneration


@suite("Pre-Lie degeneration", "prelie")
def _prelie_suite(context):
    planar = context.postlie
    algebra = context.prelie
    x = algebra.generator()
    chi = algebra.prelie_magnus(x)
    worst = _difference(abelianize_element(planar.post_lie_magnus(planar.generator())), chi)
    worst = max(worst, _difference(algebra.post_lie_magnus(x), chi))
    worst = max(worst, _difference(algebra.hbracket(x, algebra.tree("[[]]")), algebra.zero()))
    return worst, "abelianized post-Lie chi equals the pre-Lie fixed point; brackets vanish"


@suite("Pre-Lie Magnus order 3", "prelie")
def _prelie_order3_suite(context):
    algebra = context.algebra(3, AlgebraMode.PRELIE)
    x = algebra.generator()
    prod = algebra.post_lie_prod
    xx = prod(x, x)
    expected = x - xx / 2 + prod(xx, x) / 4 + prod(x, xx) / 12
    return _difference(algebra.prelie_magnus(x), expected), "x - x>x/2 + (x>x)>x/4 + x>(x>x)/12"


@suite("Pre-Lie inverse series", "prelie")
def _prelie_inverse_suite(context):
    algebra = context.prelie
    x = algebra.generator()
    series = algebra.zero()
    for n in range(1, algebra.order + 1):
        series = series + algebra.iterated_post_lie(x, n) / math.factorial(n)
    return _difference(algebra.inverse_magnus(x), series), "Phi(x) = sum x>(x>(...x))/n!"


@suite("Pre-Lie Chi-Phi inverse", "prelie")
def _prelie_round_trip_suite(context):
    algebra = context.algebra(6, AlgebraMode.PRELIE)
    x = algebra.generator()
    worst = 0.0
    for p in (x, x + algebra.tree("[[]]") / 3, x - algebra.tree("[[][]]")):
        worst = max(worst, _difference(algebra.prelie_magnus(algebra.inverse_magnus(p)), p))
        worst = max(worst, _difference(algebra.inverse_magnus(algebra.prelie_magnus(p)), p))
    return worst, f"chi(Phi(x)) = x and Phi(chi(x)) = x to order {algebra.order}"


# Numerics


@suite("Omega closed form", "numeric", tolerance=1e-10)
def _omega_closed_suite(context):
    A = PROBLEMS["xty"](1.0).A
    H = E12 @ E21 - E21 @ E12
    worst = float(np.abs(omega_terms(A, 1.0, 1, context.rule) - (E12 + E21 / 2)).max())
    worst = max(worst, float(np.abs(omega_terms(A, 1.0, 2, context.rule) + H / 12).max()))
    worst = max(worst, float(np.abs(omega_terms(A, 1.0, 3, context.rule) + E21 / 120).max()))
    return worst, "xty: Omega_1 = X + Y/2, Omega_2 = -[X,Y]/12, Omega_3 = -Y/120 at t = 1"


@suite("Omega recursion", "numeric", tolerance=1e-7)
def _omega_recursion_suite(context):
    worst = 0.0
    for name in ("xty", "skew"):
        A = PROBLEMS[name](1.0).A
        recursive = omega_recursion(A, 1.0, 3, n_steps=200)
        for k in range(1, 4):
            worst = max(worst, float(np.abs(recursive[k - 1] - omega_terms(A, 1.0, k, context.rule)).max()))
    return worst, "RK4 on the Omega_k system (200 steps) against nested quadrature"


@suite("Chen-Strichartz", "numeric", tolerance=1e-5)
def _chen_strichartz_suite(context):
    worst = 0.0
    for name in ("xty", "skew"):
        A = PROBLEMS[name](1.0).A
        for n in (1, 2, 3):
            term = chen_strichartz_term(A, 1.0, n, context.rule)
            worst = max(worst, float(np.abs(term - omega_terms(A, 1.0, n, context.rule)).max()))
    return worst, "permutation formula against Omega_1..Omega_3"


@suite("Chronological identity", "numeric", tolerance=1e-8)
def _chronological_suite(context):
    rule = QuadratureRule(nodes=6, panels=context.run_config.quadrature_panels)
    X, Y, Z = random_polynomial_functions(3)
    return chronological_residual(X, Y, Z, rule), "pre-Lie identity of [int X, Y] on random quadratics"


@suite("Dendriform identities", "numeric", tolerance=1e-8)
def _dendriform_suite(context):
    rule = QuadratureRule(nodes=6, panels=context.run_config.quadrature_panels)
    X, Y, Z = random_polynomial_functions(3)
    residuals = dendriform_residuals(X, Y, Z, rule)
    name = max(residuals, key=residuals.get)
    return residuals[name], f"half-shuffle axioms; largest residual in {name}"


@suite("Liouville", "numeric", tolerance=1e-8)
def _liouville_suite(context):
    worst = 0.0
    for name, build in sorted(PROBLEMS.items()):
        problem = build(1.0)
        Y = reference_solution(problem.A, 1.0, 1024)
        trace = context.rule.integrate(lambda t: np.trace(problem.A(t)), 1.0)
        worst = max(worst, abs(float(np.linalg.det(Y)) - math.exp(float(trace))))
    return worst, "det Y(1) = exp(int tr A) for every named problem"


@suite("Magnus order-4 convergence", "numeric", tolerance=0.3)
def _convergence_suite(context):
    oracle_steps = context.run_config.oracle_steps
    xty = PROBLEMS["xty"](1.0)
    fourth = convergence_study(xty, 3, oracle_steps=oracle_steps)
    second = convergence_study(xty, 1, oracle_steps=oracle_steps)
    commuting = convergence_study(PROBLEMS["commuting"](1.0), 1, oracle_steps=oracle_steps)
    if fourth.slope is None or second.slope is None or not commuting.exact:
        return float("inf"), "convergence rates could not be fitted"
    deviation = max(abs(fourth.slope - 4.0), abs(second.slope - 2.0))
    return deviation, (
        f"slopes k=3: {fourth.slope:.3f}, k=1: {second.slope:.3f}; commuting k=1 exact"
    )


@suite("Pre-Lie bridge", "numeric", tolerance=1e-6)
def _bridge_suite(context):
    algebra = context.algebra(3, AlgebraMode.PRELIE)
    expansion = algebra.prelie_magnus(algebra.generator())
    problem = PROBLEMS["xty"](1.0)
    worst = 0.0
    for k in (1, 2, 3):
        symbolic = prelie_omega_term(problem.A, 1.0, k, expansion, context.rule)
        worst = max(worst, float(np.abs(symbolic - omega_terms(problem.A, 1.0, k, context.rule)).max()))

    ts = [0.25, 0.5, 0.75, 1.0]
    values = [omega_terms(PROBLEMS["xty"](t).A, t, 2, context.rule) for t in ts]
    cubic = fit_power_coefficients(ts, values, [3])[3]
    H = E12 @ E21 - E21 @ E12
    coefficient = float(expansion.coefficient([parse_tree("[[]]")]))
    worst = max(worst, float(np.abs(cubic - coefficient / 6 * H).max()))
    return worst, "tree expansion in the chronological algebra reproduces Omega_1..Omega_3; t^3 fit"
